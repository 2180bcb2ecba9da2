//! Hyperplane arrangements cut out by weight kernels.
//!
//! Every support function in this crate is linear on the (open) chambers of
//! the arrangement of its weight kernels, so a ratio of two such functions
//! attains its maximum over nonzero directions on a *critical ray*: a line
//! that lies on d-1 independent walls.  This module deduplicates weights
//! into walls, enumerates all critical rays exactly, and (on an optional
//! path) enumerates full-dimensional chambers with witness points as
//! certificates.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{self, LinearForm, Rational, Vector};
use crate::weights::WeightMultiset;
use crate::Result;

/// Primitive integer direction with both signs listed explicitly.
pub type Ray = Vector;

/// A wall of the arrangement: the kernel of `normal`.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    /// Primitive integer normal, first nonzero coefficient positive.
    pub normal: LinearForm,
    /// Input weights that are proportional to `normal`.
    pub source_weights: Vec<LinearForm>,
}

/// Deduplicated central arrangement in a fixed dimension.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Full-dimensional open region: strict sign per hyperplane (in index
/// order) plus an interior point.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub signs: String,
    pub witness: Vector,
}

impl Arrangement {
    /// Collapses the nonzero weights of all inputs into canonical walls.
    /// Proportional weights (including opposite signs) share one wall.
    pub fn from_weights(dim: usize, sets: &[&WeightMultiset]) -> Result<Arrangement> {
        let mut by_normal: std::collections::BTreeMap<LinearForm, Vec<LinearForm>> =
            std::collections::BTreeMap::new();
        for set in sets {
            if set.dim_a() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: set.dim_a(),
                });
            }
            for (form, _) in set.iter() {
                let key = form.canonical_normal()?;
                by_normal.entry(key).or_default().push(form.clone());
            }
        }
        Ok(Arrangement {
            dim,
            hyperplanes: by_normal
                .into_iter()
                .map(|(normal, source_weights)| Hyperplane {
                    normal,
                    source_weights,
                })
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// All primitive directions lying on d-1 independent walls, both signs.
    ///
    /// Walls are grouped into flats (common intersections) by breadth-first
    /// descent through span lattices, so coincidences between walls are
    /// handled exactly; each corank-1 flat contributes one line.  With
    /// d = 1 every direction is critical and the two unit rays return
    /// unconditionally.
    pub fn critical_rays(&self) -> Result<Vec<Ray>> {
        let d = self.dim;
        if d == 0 {
            return Ok(Vec::new());
        }
        if d == 1 {
            return Ok(vec![Vector::from_ints(&[-1]), Vector::from_ints(&[1])]);
        }
        let normals: Vec<IRow> = self
            .hyperplanes
            .iter()
            .map(|h| irow_from_form(&h.normal))
            .collect::<Result<_>>()?;

        let mut full = Vec::new();
        for n in &normals {
            let mut w = n.clone();
            reduce_against(&full, &mut w)?;
            if iprimitive(&mut w) {
                full = insert_row(&full, w)?;
            }
        }
        if full.len() < d - 1 {
            return Err(Error::WeightsDoNotSpan {
                rank: full.len(),
                need: d - 1,
            });
        }

        let mut rays: BTreeSet<Vector> = BTreeSet::new();
        let mut seen: HashSet<Vec<IRow>> = HashSet::new();
        let mut queue: VecDeque<Vec<IRow>> = VecDeque::new();
        seen.insert(Vec::new());
        queue.push_back(Vec::new());
        while let Some(basis) = queue.pop_front() {
            if basis.len() == d - 1 {
                let forms: Vec<LinearForm> = basis.iter().map(form_from_irow).collect();
                let kernel = linalg::kernel_basis(&forms, d)?;
                if kernel.len() != 1 {
                    return Err(Error::Internal(format!(
                        "corank-1 flat with kernel dimension {}",
                        kernel.len()
                    )));
                }
                let ray = kernel.into_iter().next().unwrap();
                rays.insert(ray.neg());
                rays.insert(ray);
                continue;
            }
            for n in &normals {
                let mut w = n.clone();
                reduce_against(&basis, &mut w)?;
                if !iprimitive(&mut w) {
                    continue;
                }
                let next = insert_row(&basis, w)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(rays.into_iter().collect())
    }

    /// Sign of `y` against each wall, as a +/0/- string in index order.
    pub fn sign_string(&self, y: &Vector) -> Result<String> {
        let mut out = String::with_capacity(self.hyperplanes.len());
        for h in &self.hyperplanes {
            let v = h.normal.eval(y)?;
            out.push(if v.is_positive() {
                '+'
            } else if v.is_negative() {
                '-'
            } else {
                '0'
            });
        }
        Ok(out)
    }

    /// All realizable full-dimensional sign vectors, by inserting walls one
    /// at a time and splitting the regions each new wall crosses.  Region
    /// feasibility is decided exactly: a cheap candidate sum over critical
    /// rays first, then a rational phase-1 simplex.
    pub fn chambers(&self) -> Result<Vec<Chamber>> {
        let d = self.dim;
        let rays = match self.critical_rays() {
            Ok(r) => r,
            Err(Error::WeightsDoNotSpan { .. }) => Vec::new(),
            Err(e) => return Err(e),
        };
        let mut regions: Vec<(Vec<i8>, Vector)> = vec![(Vec::new(), Vector::zeros(d))];
        for (k, hp) in self.hyperplanes.iter().enumerate() {
            let mut next: Vec<(Vec<i8>, Vector)> = Vec::new();
            for (signs, witness) in regions {
                let val = hp.normal.eval(&witness)?;
                let known = if val.is_positive() {
                    Some(1i8)
                } else if val.is_negative() {
                    Some(-1i8)
                } else {
                    None
                };
                for side in [1i8, -1i8] {
                    let mut signs_ext = signs.clone();
                    signs_ext.push(side);
                    if known == Some(side) {
                        next.push((signs_ext, witness.clone()));
                        continue;
                    }
                    let system = self.signed_system(&signs_ext, k + 1)?;
                    if let Some(w) = region_witness(&system, d, &rays)? {
                        next.push((signs_ext, w));
                    }
                }
            }
            regions = next;
        }
        Ok(regions
            .into_iter()
            .map(|(signs, witness)| Chamber {
                signs: signs
                    .iter()
                    .map(|s| if *s > 0 { '+' } else { '-' })
                    .collect(),
                witness,
            })
            .collect())
    }

    fn signed_system(&self, signs: &[i8], len: usize) -> Result<Vec<LinearForm>> {
        let mut rows = Vec::with_capacity(len);
        for i in 0..len {
            let n = &self.hyperplanes[i].normal;
            rows.push(if signs[i] > 0 { n.clone() } else { n.neg() });
        }
        Ok(rows)
    }
}

/// Interior point of {y : row(y) > 0 for all rows}, or None when empty.
///
/// Tries sums of weakly-compatible candidate rays first (sufficient on
/// simplicial arrangements), then decides exactly: the strict homogeneous
/// system is feasible iff {row(y) >= 1} is, by scaling.
fn region_witness(rows: &[LinearForm], dim: usize, rays: &[Ray]) -> Result<Option<Vector>> {
    if !rays.is_empty() {
        let mut sum = Vector::zeros(dim);
        for r in rays {
            if rows
                .iter()
                .map(|f| f.eval(r))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|v| !v.is_negative())
            {
                sum = sum.add(r)?;
            }
        }
        let strict = rows
            .iter()
            .map(|f| f.eval(&sum))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| v.is_positive());
        if strict {
            return Ok(Some(sum));
        }
    }
    feasible_point(rows, dim)
}

/// Phase-1 simplex with Bland's rule on {x : rows·x >= 1}, exact rational
/// arithmetic.  Returns a feasible point or None.
pub(crate) fn feasible_point(rows: &[LinearForm], dim: usize) -> Result<Option<Vector>> {
    let m = rows.len();
    if m == 0 {
        return Ok(Some(Vector::zeros(dim)));
    }
    // Columns: x+ (dim), x- (dim), slack (m), artificial (m).
    let ncols = 2 * dim + 2 * m;
    let art0 = 2 * dim + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = vec![Rational::one(); m];
    for (i, row) in rows.iter().enumerate() {
        if row.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.dim(),
            });
        }
        let mut tr = vec![Rational::zero(); ncols];
        for j in 0..dim {
            tr[j] = row.0[j].clone();
            tr[dim + j] = -row.0[j].clone();
        }
        tr[2 * dim + i] = -Rational::one();
        tr[art0 + i] = Rational::one();
        t.push(tr);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| art0 + i).collect();

    loop {
        // Reduced cost of column j for the phase-1 objective (sum of
        // artificials): c_j - sum over rows with artificial basis of t[i][j].
        let mut entering = None;
        'cols: for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = if j >= art0 {
                Rational::one()
            } else {
                Rational::zero()
            };
            for i in 0..m {
                if basis[i] >= art0 {
                    rc -= t[i][j].clone();
                }
            }
            if rc.is_negative() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(e) = entering else {
            let cost: Rational = (0..m)
                .filter(|&i| basis[i] >= art0)
                .map(|i| rhs[i].clone())
                .sum();
            if !cost.is_zero() {
                return Ok(None);
            }
            let mut x = vec![Rational::zero(); dim];
            for i in 0..m {
                if basis[i] < dim {
                    x[basis[i]] += rhs[i].clone();
                } else if basis[i] < 2 * dim {
                    x[basis[i] - dim] -= rhs[i].clone();
                }
            }
            let point = Vector(x);
            for row in rows {
                if row.eval(&point)? < Rational::one() {
                    return Err(Error::Internal(
                        "simplex returned an infeasible point".to_string(),
                    ));
                }
            }
            return Ok(Some(point));
        };
        // Ratio test, ties broken by smallest basis variable (Bland).
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let ri = &rhs[i] / &t[i][e];
                        let rl = &rhs[l] / &t[l][e];
                        ri < rl || (ri == rl && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            return Err(Error::Internal(
                "phase-1 simplex objective unbounded".to_string(),
            ));
        };
        let piv = t[l][e].clone();
        for v in t[l].iter_mut() {
            *v /= &piv;
        }
        rhs[l] /= &piv;
        for i in 0..m {
            if i == l || t[i][e].is_zero() {
                continue;
            }
            let factor = t[i][e].clone();
            for j in 0..ncols {
                let delta = &factor * &t[l][j];
                t[i][j] -= delta;
            }
            let delta = &factor * &rhs[l];
            rhs[i] -= delta;
        }
        basis[l] = e;
    }
}

// Integer row machinery for the flat descent.  Rows are kept primitive
// (gcd 1, first nonzero positive) in reduced echelon shape, which makes the
// basis a canonical key for its row space.

type IRow = Vec<i128>;

fn irow_from_form(form: &LinearForm) -> Result<IRow> {
    let prim = form.primitive()?;
    prim.0
        .iter()
        .map(|r| {
            i128::try_from(r.numer().clone())
                .map_err(|_| Error::Internal("normal coefficient exceeds i128".to_string()))
        })
        .collect()
}

fn form_from_irow(row: &IRow) -> LinearForm {
    LinearForm(row.iter().map(|&c| Rational::from(BigInt::from(c))).collect())
}

fn igcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Divides by the gcd and makes the first nonzero entry positive.
/// Returns false when the row is zero.
fn iprimitive(row: &mut IRow) -> bool {
    let mut g: i128 = 0;
    for &v in row.iter() {
        g = igcd(g, v);
    }
    if g == 0 {
        return false;
    }
    let lead = row.iter().find(|v| **v != 0).copied().unwrap();
    let sign = if lead < 0 { -1 } else { 1 };
    for v in row.iter_mut() {
        *v = *v / g * sign;
    }
    true
}

fn pivot_col(row: &IRow) -> usize {
    row.iter().position(|v| *v != 0).expect("nonzero row")
}

fn fuse(scale_w: i128, w: &IRow, scale_r: i128, r: &IRow) -> Result<IRow> {
    w.iter()
        .zip(r.iter())
        .map(|(&a, &b)| {
            scale_w
                .checked_mul(a)
                .and_then(|x| scale_r.checked_mul(b).and_then(|y| x.checked_sub(y)))
                .ok_or_else(|| Error::Internal("integer overflow in flat descent".to_string()))
        })
        .collect()
}

/// Eliminates every basis pivot from w in place (fraction-free).
fn reduce_against(basis: &[IRow], w: &mut IRow) -> Result<()> {
    for r in basis {
        let c = pivot_col(r);
        if w[c] != 0 {
            *w = fuse(r[c], w, w[c], r)?;
            iprimitive(w);
        }
    }
    Ok(())
}

/// Adjoins a reduced primitive row, clearing its pivot column from the
/// existing rows and keeping pivot order; the result is canonical for the
/// enlarged row space.
fn insert_row(basis: &[IRow], w: IRow) -> Result<Vec<IRow>> {
    let cw = pivot_col(&w);
    let mut rows: Vec<IRow> = Vec::with_capacity(basis.len() + 1);
    for r in basis {
        if r[cw] != 0 {
            let mut cleared = fuse(w[cw], r, r[cw], &w)?;
            if !iprimitive(&mut cleared) {
                return Err(Error::Internal("basis row vanished in insert".to_string()));
            }
            rows.push(cleared);
        } else {
            rows.push(r.clone());
        }
    }
    rows.push(w);
    rows.sort_by_key(|r| pivot_col(r));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;
    use itertools::Itertools;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn multiset(dim: usize, weights: &[(&[i64], usize)]) -> WeightMultiset {
        let mut w = WeightMultiset::new(dim);
        for (coeffs, mult) in weights {
            w.insert(LinearForm::from_ints(coeffs), *mult).unwrap();
        }
        w
    }

    /// Root system of sl(3,R) on the 2-dim zero-sum chart (t1, t2),
    /// third coordinate implied as -t1-t2.
    fn sl3_chart() -> WeightMultiset {
        multiset(
            2,
            &[
                (&[1, -1], 1),
                (&[-1, 1], 1),
                (&[2, 1], 1),
                (&[-2, -1], 1),
                (&[1, 2], 1),
                (&[-1, -2], 1),
            ],
        )
    }

    fn rays_of(w: &WeightMultiset) -> Vec<Ray> {
        Arrangement::from_weights(w.dim_a(), &[w])
            .unwrap()
            .critical_rays()
            .unwrap()
    }

    #[test]
    fn proportional_weights_collapse() {
        let w = multiset(1, &[(&[2], 1), (&[-2], 1)]);
        let arr = Arrangement::from_weights(1, &[&w]).unwrap();
        assert_eq!(arr.hyperplanes().len(), 1);
        assert_eq!(arr.hyperplanes()[0].normal, LinearForm::from_ints(&[1]));
        assert_eq!(arr.hyperplanes()[0].source_weights.len(), 2);
    }

    #[test]
    fn axis_weights_make_two_walls() {
        let w = multiset(2, &[(&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let arr = Arrangement::from_weights(2, &[&w]).unwrap();
        assert_eq!(arr.hyperplanes().len(), 2);
        let rays = arr.critical_rays().unwrap();
        let expect: BTreeSet<Vector> = [
            Vector::from_ints(&[1, 0]),
            Vector::from_ints(&[-1, 0]),
            Vector::from_ints(&[0, 1]),
            Vector::from_ints(&[0, -1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(rays.into_iter().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn rank_one_rays_are_units() {
        let w = multiset(1, &[(&[5], 3)]);
        assert_eq!(
            rays_of(&w),
            vec![Vector::from_ints(&[-1]), Vector::from_ints(&[1])]
        );
    }

    #[test]
    fn rank_two_root_system_rays() {
        let rays = rays_of(&sl3_chart());
        let expect: BTreeSet<Vector> = [
            [1i64, 1],
            [-1, -1],
            [1, -2],
            [-1, 2],
            [2, -1],
            [-2, 1],
        ]
        .iter()
        .map(|c| Vector::from_ints(c))
        .collect();
        assert_eq!(rays.len(), 6);
        assert_eq!(rays.into_iter().collect::<BTreeSet<_>>(), expect);
    }

    #[test]
    fn missing_directions_reported() {
        let w = multiset(3, &[(&[1, 0, 0], 1), (&[-1, 0, 0], 1)]);
        match Arrangement::from_weights(3, &[&w]).unwrap().critical_rays() {
            Err(Error::WeightsDoNotSpan { rank: 1, need: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chamber_counts_match_known_arrangements() {
        let line = multiset(1, &[(&[1], 1), (&[-1], 1)]);
        let arr = Arrangement::from_weights(1, &[&line]).unwrap();
        assert_eq!(arr.chambers().unwrap().len(), 2);

        let arr3 = Arrangement::from_weights(2, &[&sl3_chart()]).unwrap();
        let chambers = arr3.chambers().unwrap();
        assert_eq!(chambers.len(), 6);
        for c in &chambers {
            assert_eq!(arr3.sign_string(&c.witness).unwrap(), c.signs);
            assert!(!c.signs.contains('0'));
        }

        // Three generic concurrent lines, not a root system.
        let generic = multiset(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 3], 1)]);
        let arrg = Arrangement::from_weights(2, &[&generic]).unwrap();
        assert_eq!(arrg.chambers().unwrap().len(), 6);
    }

    #[test]
    fn feasibility_solver_agrees_with_geometry() {
        // x > 0 and -x > 0 is empty.
        let rows = vec![LinearForm::from_ints(&[1]), LinearForm::from_ints(&[-1])];
        assert!(feasible_point(&rows, 1).unwrap().is_none());
        // Narrow planar wedge is nonempty.
        let rows = vec![
            LinearForm::from_ints(&[10, -9]),
            LinearForm::from_ints(&[-9, 10]),
        ];
        let w = feasible_point(&rows, 2).unwrap().unwrap();
        for r in &rows {
            assert!(r.eval(&w).unwrap() >= rat_int(1));
        }
    }

    fn zaslavsky_bound(m: usize, d: usize) -> u128 {
        // Number of chambers of any central arrangement of m hyperplanes
        // in dimension d is at most sum over k <= d of C(m, k) ... doubled
        // for the central case bound 2 * sum_{k < d} C(m-1, k); the loose
        // affine bound suffices for testing.
        let mut total: u128 = 0;
        for k in 0..=d.min(m) {
            let mut c: u128 = 1;
            for i in 0..k {
                c = c * (m - i) as u128 / (i + 1) as u128;
            }
            total += c;
        }
        total
    }

    #[test]
    fn random_points_land_in_enumerated_chambers() {
        let arr = Arrangement::from_weights(2, &[&sl3_chart()]).unwrap();
        let chambers = arr.chambers().unwrap();
        let index: HashSet<String> = chambers.iter().map(|c| c.signs.clone()).collect();
        assert_eq!(index.len(), chambers.len());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut hits = 0;
        for _ in 0..1000 {
            let y = Vector::from_ints(&[rng.gen_range(-50i64..=50), rng.gen_range(-50i64..=50)]);
            let s = arr.sign_string(&y).unwrap();
            if s.contains('0') {
                continue;
            }
            assert!(index.contains(&s), "sign vector {s} not enumerated");
            hits += 1;
        }
        assert!(hits > 900);
    }

    /// Extreme rays of each chamber cone by brute force: a feasible ray
    /// whose tight constraints have rank d-1.  Every one must appear among
    /// the critical rays.
    #[test]
    fn chamber_extreme_rays_are_critical() {
        for w in [
            sl3_chart(),
            multiset(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1), (&[1, -1], 1)]),
        ] {
            let d = w.dim_a();
            let arr = Arrangement::from_weights(d, &[&w]).unwrap();
            let critical: HashSet<Vector> = arr.critical_rays().unwrap().into_iter().collect();
            for chamber in arr.chambers().unwrap() {
                let rows: Vec<LinearForm> = arr
                    .hyperplanes()
                    .iter()
                    .zip(chamber.signs.chars())
                    .map(|(h, s)| if s == '+' { h.normal.clone() } else { h.normal.neg() })
                    .collect();
                for subset in (0..rows.len()).combinations(d - 1) {
                    let sub: Vec<LinearForm> =
                        subset.iter().map(|&i| rows[i].clone()).collect();
                    let kernel = linalg::kernel_basis(&sub, d).unwrap();
                    if kernel.len() != 1 {
                        continue;
                    }
                    let r = kernel.into_iter().next().unwrap();
                    for cand in [r.neg(), r] {
                        let feasible = rows
                            .iter()
                            .all(|f| !f.eval(&cand).unwrap().is_negative());
                        if feasible {
                            assert!(
                                critical.contains(&cand),
                                "extreme ray {cand:?} missing from critical rays"
                            );
                        }
                    }
                }
            }
        }
    }

    fn arb_weights() -> impl Strategy<Value = WeightMultiset> {
        prop::collection::vec((-3i64..=3, -3i64..=3), 2..6).prop_filter_map(
            "need spanning nonzero weights",
            |raw| {
                let mut w = WeightMultiset::new(2);
                for (a, b) in raw {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    w.insert(LinearForm::from_ints(&[a, b]), 1).unwrap();
                    w.insert(LinearForm::from_ints(&[-a, -b]), 1).unwrap();
                }
                (w.support_size() >= 2).then_some(w)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rays_invariant_under_scaling_and_duplication(w in arb_weights(), k in 1usize..=4) {
            let base = rays_of(&w);
            prop_assert_eq!(&base, &rays_of(&w.scaled(k)));
            let doubled = w.union(&w).unwrap();
            prop_assert_eq!(&base, &rays_of(&doubled));
        }

        #[test]
        fn chambers_are_consistent(w in arb_weights()) {
            let arr = Arrangement::from_weights(2, &[&w]).unwrap();
            let chambers = arr.chambers().unwrap();
            let m = arr.hyperplanes().len();
            prop_assert!((chambers.len() as u128) <= zaslavsky_bound(m, 2));
            // Central arrangement of m >= 1 distinct lines in the plane has
            // exactly 2m chambers.
            prop_assert_eq!(chambers.len(), 2 * m);
            let mut seen = HashSet::new();
            for c in &chambers {
                prop_assert_eq!(arr.sign_string(&c.witness).unwrap(), c.signs.clone());
                prop_assert!(seen.insert(c.signs.clone()));
            }
        }
    }
}
