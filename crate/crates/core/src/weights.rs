//! Weight multisets and reductive pairs.
//!
//! A [`WeightMultiset`] records how a split abelian subalgebra a acts on a
//! finite-dimensional module: finitely many nonzero linear forms with
//! positive multiplicities, plus the dimension of the zero-weight space.
//! The support function [`WeightMultiset::rho`] is the trace of the action
//! on the positive part,
//!
//! ```text
//!     rho(Y) = sum over weights with w(Y) > 0 of mult(w) * w(Y),
//! ```
//!
//! a piecewise-linear, positively homogeneous, convex function.  It is the
//! exact exponential decay rate of intersection volumes of generic compact
//! sets under the flow of Y, which is why every verdict in this crate
//! reduces to comparing such functions.
//!
//! A [`HomogeneousPair`] packages the weights of a on g, on a reductive
//! subalgebra h, and on the complement q = g minus h; the complement is
//! always derived by exact multiset subtraction so that rho_g = rho_h +
//! rho_q holds identically rather than by accident.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::criterion::AmbientWeyl;
use crate::error::Error;
use crate::linalg::{self, LinearForm, Rational, Vector};
use crate::Result;

/// Multiset of nonzero weights plus a zero-weight dimension.
///
/// Invariants: every key is a nonzero form of length `dim_a` with
/// multiplicity at least 1; the zero form is never a key (zero weights are
/// accounted by `dim_zero`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    dim_a: usize,
    dim_zero: usize,
    entries: BTreeMap<LinearForm, usize>,
}

impl WeightMultiset {
    pub fn new(dim_a: usize) -> Self {
        WeightMultiset {
            dim_a,
            dim_zero: 0,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_zero(&self) -> usize {
        self.dim_zero
    }

    /// Adds `mult` copies of a weight.  Zero forms land in `dim_zero`;
    /// `mult == 0` is a no-op.
    pub fn insert(&mut self, form: LinearForm, mult: usize) -> Result<()> {
        if form.dim() != self.dim_a {
            return Err(Error::DimensionMismatch {
                expected: self.dim_a,
                got: form.dim(),
            });
        }
        if mult == 0 {
            return Ok(());
        }
        if form.is_zero() {
            self.dim_zero += mult;
        } else {
            *self.entries.entry(form).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn add_zero(&mut self, mult: usize) {
        self.dim_zero += mult;
    }

    /// Multiplicity of a nonzero weight (0 if absent).
    pub fn mult_of(&self, form: &LinearForm) -> usize {
        self.entries.get(form).copied().unwrap_or(0)
    }

    /// Nonzero weights in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&LinearForm, usize)> {
        self.entries.iter().map(|(f, &m)| (f, m))
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Total module dimension: zero space plus all multiplicities.
    pub fn total_dim(&self) -> usize {
        self.dim_zero + self.entries.values().sum::<usize>()
    }

    /// Trace of the action of Y on the positive-weight part.
    pub fn rho(&self, y: &Vector) -> Result<Rational> {
        if y.dim() != self.dim_a {
            return Err(Error::DimensionMismatch {
                expected: self.dim_a,
                got: y.dim(),
            });
        }
        let mut acc = Rational::zero();
        for (form, mult) in self.iter() {
            let val = form.eval(y)?;
            if val.is_positive() {
                acc += val * Rational::from(num::BigInt::from(mult));
            }
        }
        Ok(acc)
    }

    /// Exact multiset difference; fails with the offending weight when
    /// `other` is not contained in `self`.
    pub fn subtract(&self, other: &WeightMultiset) -> Result<WeightMultiset> {
        if other.dim_a != self.dim_a {
            return Err(Error::DimensionMismatch {
                expected: self.dim_a,
                got: other.dim_a,
            });
        }
        if other.dim_zero > self.dim_zero {
            return Err(Error::ZeroSpaceUnderflow {
                have: self.dim_zero,
                need: other.dim_zero,
            });
        }
        let mut out = WeightMultiset::new(self.dim_a);
        out.dim_zero = self.dim_zero - other.dim_zero;
        for (form, need) in other.iter() {
            let have = self.mult_of(form);
            if have < need {
                return Err(Error::SubtractionUnderflow {
                    weight: coeff_list(form),
                    have,
                    need,
                });
            }
        }
        for (form, have) in self.iter() {
            let left = have - other.mult_of(form);
            if left > 0 {
                out.entries.insert(form.clone(), left);
            }
        }
        Ok(out)
    }

    /// Disjoint union (multiplicities add).
    pub fn union(&self, other: &WeightMultiset) -> Result<WeightMultiset> {
        if other.dim_a != self.dim_a {
            return Err(Error::DimensionMismatch {
                expected: self.dim_a,
                got: other.dim_a,
            });
        }
        let mut out = self.clone();
        out.dim_zero += other.dim_zero;
        for (form, mult) in other.iter() {
            *out.entries.entry(form.clone()).or_insert(0) += mult;
        }
        Ok(out)
    }

    /// All multiplicities (including the zero space) scaled by `k`.
    /// `k = 2` realifies a complex module.
    pub fn scaled(&self, k: usize) -> WeightMultiset {
        let mut out = WeightMultiset::new(self.dim_a);
        out.dim_zero = self.dim_zero * k;
        if k > 0 {
            for (form, mult) in self.iter() {
                out.entries.insert(form.clone(), mult * k);
            }
        }
        out
    }

    /// True when mult(-w) = mult(w) for every weight.
    pub fn negate_closed(&self) -> bool {
        self.iter().all(|(form, mult)| self.mult_of(&form.neg()) == mult)
    }

    /// Offending weight if the multiset is not negate-closed.
    pub fn negate_closure_witness(&self) -> Option<&LinearForm> {
        self.iter()
            .find(|(form, mult)| self.mult_of(&form.neg()) != *mult)
            .map(|(form, _)| form)
    }

    /// Sum of mult(w) * w; the zero form exactly when the module carries a
    /// trace-free (volume-preserving) action.
    pub fn weighted_sum(&self) -> LinearForm {
        let mut acc = LinearForm::zeros(self.dim_a);
        for (form, mult) in self.iter() {
            let scaled = form.scale(&Rational::from(num::BigInt::from(mult)));
            acc = acc.add(&scaled).expect("dims agree by invariant");
        }
        acc
    }

    pub fn is_zero_sum(&self) -> bool {
        self.weighted_sum().is_zero()
    }

    /// True when the nonzero weights span the dual space, i.e. the joint
    /// kernel of the action is trivial.  When false, the action has a
    /// noncompact kernel: the decay exponent is infinite and no verdict
    /// based on finite exponents applies.
    pub fn compact_kernel(&self) -> Result<bool> {
        let forms: Vec<LinearForm> = self.iter().map(|(f, _)| f.clone()).collect();
        Ok(linalg::rank(&forms, self.dim_a)? == self.dim_a)
    }

    /// Basis of the joint kernel of all nonzero weights.
    pub fn kernel(&self) -> Result<Vec<Vector>> {
        let forms: Vec<LinearForm> = self.iter().map(|(f, _)| f.clone()).collect();
        linalg::kernel_basis(&forms, self.dim_a)
    }
}

fn coeff_list(form: &LinearForm) -> String {
    form.0
        .iter()
        .map(linalg::format_rational)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    coeffs: Vec<String>,
    mult: usize,
}

#[derive(Serialize, Deserialize)]
struct RawMultiset {
    dim_zero: usize,
    weights: Vec<RawEntry>,
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawMultiset {
            dim_zero: self.dim_zero,
            weights: self
                .iter()
                .map(|(form, mult)| RawEntry {
                    coeffs: form.0.iter().map(linalg::format_rational).collect(),
                    mult,
                })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl WeightMultiset {
    /// Builds from parsed raw data.  `dim_hint` pins the dimension when
    /// the weight list is empty (otherwise it is inferred and checked).
    pub fn from_raw_parts(
        dim_zero: usize,
        weights: Vec<(Vec<String>, usize)>,
        dim_hint: Option<usize>,
    ) -> Result<Self> {
        let dim = match (dim_hint, weights.first()) {
            (Some(d), _) => d,
            (None, Some((coeffs, _))) => coeffs.len(),
            (None, None) => 0,
        };
        let mut out = WeightMultiset::new(dim);
        out.dim_zero = dim_zero;
        for (coeffs, mult) in weights {
            if mult == 0 {
                return Err(Error::InvalidFamily(
                    "weight multiplicity must be positive".to_string(),
                ));
            }
            let parsed: Result<Vec<Rational>> =
                coeffs.iter().map(|s| linalg::parse_rational(s)).collect();
            out.insert(LinearForm(parsed?), mult)?;
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for WeightMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMultiset::deserialize(deserializer)?;
        WeightMultiset::from_raw_parts(
            raw.dim_zero,
            raw.weights.into_iter().map(|e| (e.coeffs, e.mult)).collect(),
            None,
        )
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Weights of a maximal split abelian subalgebra a of h on g, h, and the
/// complement q.  The complement satisfies q = g minus h as multisets, so
/// rho_g = rho_h + rho_q pointwise by construction.
#[derive(Clone, Debug)]
pub struct HomogeneousPair {
    label: String,
    dim_a: usize,
    g: WeightMultiset,
    h: WeightMultiset,
    q: WeightMultiset,
    ambient: Option<AmbientWeyl>,
}

impl HomogeneousPair {
    /// Validates and assembles a pair; q is derived by subtraction.
    ///
    /// Both g and h must be negate-closed (the action is by a reductive
    /// subalgebra preserving a volume form; without this the support
    /// function loses its symmetry and every downstream verdict is void).
    pub fn new(
        label: impl Into<String>,
        g: WeightMultiset,
        h: WeightMultiset,
        ambient: Option<AmbientWeyl>,
    ) -> Result<Self> {
        let dim_a = g.dim_a();
        if h.dim_a() != dim_a {
            return Err(Error::DimensionMismatch {
                expected: dim_a,
                got: h.dim_a(),
            });
        }
        for w in [&g, &h] {
            if let Some(form) = w.negate_closure_witness() {
                return Err(Error::NotNegateClosed {
                    weight: coeff_list(form),
                });
            }
        }
        let q = g.subtract(&h)?;
        if let Some(a) = &ambient {
            a.validate(dim_a)?;
        }
        Ok(HomogeneousPair {
            label: label.into(),
            dim_a,
            g,
            h,
            q,
            ambient,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn g(&self) -> &WeightMultiset {
        &self.g
    }

    pub fn h(&self) -> &WeightMultiset {
        &self.h
    }

    pub fn q(&self) -> &WeightMultiset {
        &self.q
    }

    pub fn ambient(&self) -> Option<&AmbientWeyl> {
        self.ambient.as_ref()
    }

    pub fn set_ambient(&mut self, ambient: Option<AmbientWeyl>) -> Result<()> {
        if let Some(a) = &ambient {
            a.validate(self.dim_a)?;
        }
        self.ambient = ambient;
        Ok(())
    }

    pub fn rho_g(&self, y: &Vector) -> Result<Rational> {
        self.g.rho(y)
    }

    pub fn rho_h(&self, y: &Vector) -> Result<Rational> {
        self.h.rho(y)
    }

    pub fn rho_q(&self, y: &Vector) -> Result<Rational> {
        self.q.rho(y)
    }
}

/// Weights for a reductive algebra h acting on a module V by a
/// volume-preserving representation (V weights sum to zero; h weights
/// are negate-closed).  Drives the module-level exponent, the analogue
/// of the pair exponent with (numerator, denominator) = (rho_h, rho_V).
#[derive(Clone, Debug)]
pub struct LinearActionSpec {
    pub label: String,
    dim_a: usize,
    h_weights: WeightMultiset,
    v_weights: WeightMultiset,
}

impl LinearActionSpec {
    pub fn new(
        label: impl Into<String>,
        h_weights: WeightMultiset,
        v_weights: WeightMultiset,
    ) -> Result<Self> {
        let dim_a = h_weights.dim_a();
        if v_weights.dim_a() != dim_a {
            return Err(Error::DimensionMismatch {
                expected: dim_a,
                got: v_weights.dim_a(),
            });
        }
        if let Some(form) = h_weights.negate_closure_witness() {
            return Err(Error::NotNegateClosed {
                weight: coeff_list(form),
            });
        }
        if !v_weights.is_zero_sum() {
            return Err(Error::NotSemisimple(
                "module weights do not sum to zero (action does not preserve volume)".to_string(),
            ));
        }
        Ok(LinearActionSpec {
            label: label.into(),
            dim_a,
            h_weights,
            v_weights,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn h_weights(&self) -> &WeightMultiset {
        &self.h_weights
    }

    pub fn v_weights(&self) -> &WeightMultiset {
        &self.v_weights
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};
    use proptest::prelude::*;

    fn f(coeffs: &[i64]) -> LinearForm {
        LinearForm::from_ints(coeffs)
    }

    fn v(coords: &[i64]) -> Vector {
        Vector::from_ints(coords)
    }

    /// Adjoint weights of the split rank-one algebra: {+2, -2} plus a
    /// one-dimensional zero space.
    fn sl2_adjoint() -> WeightMultiset {
        let mut w = WeightMultiset::new(1);
        w.insert(f(&[2]), 1).unwrap();
        w.insert(f(&[-2]), 1).unwrap();
        w.add_zero(1);
        w
    }

    /// Adjoint weights of sl(3,R) written on the ambient Q^3 chart
    /// (forms e_i - e_j, arguments restricted to the zero-sum plane).
    fn sl3_adjoint_q3() -> WeightMultiset {
        let mut w = WeightMultiset::new(3);
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let mut plus = vec![0i64; 3];
            plus[i] = 1;
            plus[j] = -1;
            w.insert(LinearForm::from_ints(&plus), 1).unwrap();
            let minus: Vec<i64> = plus.iter().map(|c| -c).collect();
            w.insert(LinearForm::from_ints(&minus), 1).unwrap();
        }
        w.add_zero(2);
        w
    }

    #[test]
    fn rho_rank_one() {
        let w = sl2_adjoint();
        assert_eq!(w.rho(&v(&[1])).unwrap(), rat_int(2));
        assert_eq!(w.rho(&v(&[-3])).unwrap(), rat_int(6));
        assert_eq!(w.rho(&v(&[0])).unwrap(), rat_int(0));
        assert_eq!(w.total_dim(), 3);
    }

    #[test]
    fn rho_rank_two_on_ambient_chart() {
        let w = sl3_adjoint_q3();
        assert_eq!(w.total_dim(), 8);
        assert_eq!(w.rho(&v(&[1, 0, -1])).unwrap(), rat_int(4));
        assert_eq!(w.rho(&v(&[-1, 0, 1])).unwrap(), rat_int(4));
        assert_eq!(w.rho(&v(&[1, 1, -2])).unwrap(), rat_int(6));
    }

    #[test]
    fn subtract_names_the_offending_weight() {
        let g = sl2_adjoint();
        let mut h = WeightMultiset::new(1);
        h.insert(f(&[4]), 1).unwrap();
        let err = g.subtract(&h).unwrap_err();
        match err {
            Error::SubtractionUnderflow { weight, have, need } => {
                assert_eq!(weight, "4");
                assert_eq!((have, need), (0, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn subtract_checks_zero_space() {
        let g = sl2_adjoint();
        let mut h = WeightMultiset::new(1);
        h.add_zero(2);
        assert!(matches!(
            g.subtract(&h),
            Err(Error::ZeroSpaceUnderflow { have: 1, need: 2 })
        ));
    }

    #[test]
    fn compact_kernel_detects_missing_directions() {
        let mut q = WeightMultiset::new(2);
        q.insert(f(&[1, -1]), 1).unwrap();
        q.insert(f(&[-1, 1]), 1).unwrap();
        assert!(!q.compact_kernel().unwrap());
        assert_eq!(q.kernel().unwrap(), vec![v(&[1, 1])]);
        q.insert(f(&[0, 1]), 1).unwrap();
        q.insert(f(&[0, -1]), 1).unwrap();
        assert!(q.compact_kernel().unwrap());
    }

    #[test]
    fn pair_derives_complement() {
        let g = sl2_adjoint().scaled(2);
        let h = sl2_adjoint();
        let pair = HomogeneousPair::new("doubled rank one", g, h, None).unwrap();
        assert_eq!(pair.q(), &sl2_adjoint());
        assert_eq!(pair.rho_g(&v(&[1])).unwrap(), rat_int(4));
        assert_eq!(pair.rho_q(&v(&[1])).unwrap(), rat_int(2));
    }

    #[test]
    fn pair_rejects_non_symmetric_weights() {
        let mut g = WeightMultiset::new(1);
        g.insert(f(&[2]), 2).unwrap();
        g.insert(f(&[-2]), 1).unwrap();
        let h = WeightMultiset::new(1);
        assert!(matches!(
            HomogeneousPair::new("bad", g, h, None),
            Err(Error::NotNegateClosed { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let mut w = WeightMultiset::new(2);
        w.insert(LinearForm(vec![rat(1, 2), rat_int(-1)]), 2).unwrap();
        w.insert(f(&[0, 1]), 1).unwrap();
        w.add_zero(3);
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(
            text,
            r#"{"dim_zero":3,"weights":[{"coeffs":["0","1"],"mult":1},{"coeffs":["1/2","-1"],"mult":2}]}"#
        );
        let back: WeightMultiset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    prop_compose! {
        fn arb_point(dim: usize)(coords in prop::collection::vec(-20i64..=20, dim)) -> Vector {
            Vector::from_ints(&coords)
        }
    }

    /// Random negate-closed multiset on Q^2.
    fn arb_symmetric() -> impl Strategy<Value = WeightMultiset> {
        prop::collection::vec(((-4i64..=4, -4i64..=4), 1usize..=3), 1..5).prop_map(|raw| {
            let mut w = WeightMultiset::new(2);
            for ((a, b), m) in raw {
                w.insert(f(&[a, b]), m).unwrap();
                w.insert(f(&[-a, -b]), m).unwrap();
            }
            w
        })
    }

    proptest! {
        #[test]
        fn rho_positive_homogeneity(w in arb_symmetric(), y in arb_point(2), k in 0i64..=12) {
            let scaled = y.scale(&rat_int(k));
            prop_assert_eq!(w.rho(&scaled).unwrap(), rat_int(k) * w.rho(&y).unwrap());
        }

        #[test]
        fn rho_symmetry(w in arb_symmetric(), y in arb_point(2)) {
            prop_assert_eq!(w.rho(&y).unwrap(), w.rho(&y.neg()).unwrap());
        }

        #[test]
        fn rho_additivity_over_union(a in arb_symmetric(), b in arb_symmetric(), y in arb_point(2)) {
            let u = a.union(&b).unwrap();
            prop_assert_eq!(u.rho(&y).unwrap(), a.rho(&y).unwrap() + b.rho(&y).unwrap());
        }

        #[test]
        fn rho_midpoint_convexity(w in arb_symmetric(), y in arb_point(2), z in arb_point(2)) {
            let mid = y.add(&z).unwrap().scale(&rat(1, 2));
            let lhs = w.rho(&mid).unwrap();
            let rhs = (w.rho(&y).unwrap() + w.rho(&z).unwrap()) * rat(1, 2);
            prop_assert!(lhs <= rhs);
        }

        #[test]
        fn subtract_then_union_restores(a in arb_symmetric(), b in arb_symmetric()) {
            let g = a.union(&b).unwrap();
            let q = g.subtract(&a).unwrap();
            prop_assert_eq!(q, b);
        }
    }
}
