//! Constructors for the shipped families of reductive pairs.
//!
//! Every family fixes an explicit rational chart on the split abelian
//! subalgebra a of h and emits the weights of a on g, h, and the standard
//! module directly in those coordinates:
//!
//! * type A blocks (special linear factors) use zero-sum charts: a block of
//!   size n owns n-1 coordinates u_1..u_{n-1} and its standard slots carry
//!   the forms u_1, ..., u_{n-1}, -(u_1+...+u_{n-1});
//! * types B/C/D (orthogonal and symplectic factors) use +/-x charts: a
//!   block of split rank m owns m coordinates and its standard slots carry
//!   +/-x_1..+/-x_m plus zero slots;
//! * adjoint weights come from the standard slots by the classical rules:
//!   pairwise differences for type A, exterior-square sums for orthogonal
//!   types, symmetric-square sums for symplectic types;
//! * complex algebras are treated as real ones: every multiplicity
//!   (including the zero space) doubles.
//!
//! The constructors also attach ambient Weyl data (embedding of the chart
//! into an ambient coordinate space on which the big group's restricted
//! Weyl group acts by permutations and sign changes) whenever the ambient
//! rank is within the enumeration caps.

pub mod matrices;

use num::{One, Zero};

use crate::criterion::{AmbientWeyl, WeylComponent};
use crate::error::Error;
use crate::linalg::{rat, LinearForm, Matrix, Rational};
use crate::weights::{HomogeneousPair, LinearActionSpec, WeightMultiset};
use crate::Result;

pub use matrices::{weights_from_matrices, MatrixAlgebra};

/// Coefficient field of the algebras in a family instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    R,
    C,
}

impl Field {
    fn token(self) -> &'static str {
        match self {
            Field::R => "R",
            Field::C => "C",
        }
    }

    fn parse(s: &str) -> Result<Field> {
        match s {
            "R" => Ok(Field::R),
            "C" => Ok(Field::C),
            other => Err(Error::InvalidFamily(format!("unknown field {other:?}"))),
        }
    }

    /// Real multiplicity carried by each complex weight line.
    fn mult_scale(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
        }
    }
}

/// Split base algebras available for group manifolds and
/// complexifications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseAlgebra {
    /// sl(n, R), n >= 2.
    SlR(usize),
    /// so(p, q), p >= q >= 1.
    SoPq(usize, usize),
    /// sp(m, R) (rank m, matrices of size 2m).
    SpR(usize),
}

impl BaseAlgebra {
    pub fn token(&self) -> String {
        match self {
            BaseAlgebra::SlR(n) => format!("sl{n}R"),
            BaseAlgebra::SoPq(p, q) => format!("so{p}{q}"),
            BaseAlgebra::SpR(m) => format!("sp{m}R"),
        }
    }

    fn parse(s: &str) -> Result<BaseAlgebra> {
        let bad = || Error::InvalidFamily(format!("unknown base algebra {s:?}"));
        if let Some(mid) = s.strip_prefix("sl").and_then(|t| t.strip_suffix('R')) {
            let n: usize = mid.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return Ok(BaseAlgebra::SlR(n));
        }
        if let Some(mid) = s.strip_prefix("sp").and_then(|t| t.strip_suffix('R')) {
            let m: usize = mid.parse().map_err(|_| bad())?;
            if m < 1 {
                return Err(bad());
            }
            return Ok(BaseAlgebra::SpR(m));
        }
        if let Some(digits) = s.strip_prefix("so") {
            // Single-digit signature pair, e.g. "so32" for so(3,2).
            let chars: Vec<char> = digits.chars().collect();
            if chars.len() == 2 && chars.iter().all(|c| c.is_ascii_digit()) {
                let p = chars[0].to_digit(10).unwrap() as usize;
                let q = chars[1].to_digit(10).unwrap() as usize;
                if p >= q && q >= 1 {
                    return Ok(BaseAlgebra::SoPq(p, q));
                }
            }
        }
        Err(bad())
    }

    /// The four bases exercised by the shipped sweeps.
    pub fn shipped() -> Vec<BaseAlgebra> {
        vec![
            BaseAlgebra::SlR(2),
            BaseAlgebra::SlR(3),
            BaseAlgebra::SoPq(3, 2),
            BaseAlgebra::SpR(2),
        ]
    }
}

/// A catalog family instance.  `canonical_ref` round-trips through
/// `parse_ref`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// SL(n, F) / SL(n_1, F) x ... x SL(n_r, F), with n = n_1 + ... + n_r.
    /// `with_center` enlarges a by the central torus of S(GL x ... x GL).
    SlProduct {
        field: Field,
        parts: Vec<usize>,
        with_center: bool,
    },
    /// SO(n, C) / SO(n_1, C) x ... x SO(n_r, C), sum n_i <= n.
    SoProductC { n: usize, parts: Vec<usize> },
    /// SO(p, q) / prod SO(p_i, q_i); budgets sum p_i <= p, sum q_i <= q in
    /// the given orientation.
    SoProductR {
        p: usize,
        q: usize,
        blocks: Vec<(usize, usize)>,
    },
    /// Sp(n, F) / Sp(n_1, F) x ... x Sp(n_r, F) (ranks), sum n_i <= n.
    SpProduct {
        field: Field,
        n: usize,
        parts: Vec<usize>,
    },
    /// SL(p+q, R) / SO(p, q).
    SlOverSoPq { p: usize, q: usize },
    /// SL(n, C) / SO(n, C).
    SlOverSoC { n: usize },
    /// SL(2m, F) / Sp(m, F).
    SlOverSp { field: Field, m: usize },
    /// G1 x G1 / diagonal.
    GroupManifold { base: BaseAlgebra },
    /// Complexification of the base, over the base.
    Complexification { base: BaseAlgebra },
    /// Hand-entered pair from the direct table.
    Direct { name: String },
}

impl FamilySpec {
    pub fn canonical_ref(&self) -> String {
        match self {
            FamilySpec::SlProduct {
                field,
                parts,
                with_center,
            } => {
                let n: usize = parts.iter().sum();
                let body = parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join("+");
                let center = if *with_center { ":center" } else { "" };
                format!("sl_over_product:{}:{}={}{}", field.token(), n, body, center)
            }
            FamilySpec::SoProductC { n, parts } => {
                let body = parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join("+");
                format!("so_over_product:C:{n}={body}")
            }
            FamilySpec::SoProductR { p, q, blocks } => {
                let body = blocks
                    .iter()
                    .map(|(a, b)| format!("({a},{b})"))
                    .collect::<Vec<_>>()
                    .join("+");
                format!("so_over_product:R:({p},{q})={body}")
            }
            FamilySpec::SpProduct { field, n, parts } => {
                let body = parts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join("+");
                format!("sp_over_product:{}:{}={}", field.token(), n, body)
            }
            FamilySpec::SlOverSoPq { p, q } => format!("sl_over_so_pq:R:({p},{q})"),
            FamilySpec::SlOverSoC { n } => format!("sl_over_so_pq:C:{n}"),
            FamilySpec::SlOverSp { field, m } => {
                format!("sl_over_sp:{}:m={}", field.token(), m)
            }
            FamilySpec::GroupManifold { base } => format!("group_manifold:{}", base.token()),
            FamilySpec::Complexification { base } => {
                format!("complexification:{}", base.token())
            }
            FamilySpec::Direct { name } => format!("direct:{name}"),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidFamily(format!("expected an integer, got {s:?}")))
}

/// "4=2+1+1" -> (4, [2,1,1])
fn parse_partition(s: &str) -> Result<(usize, Vec<usize>)> {
    let (lhs, rhs) = s
        .split_once('=')
        .ok_or_else(|| Error::InvalidFamily(format!("expected n=a+b+..., got {s:?}")))?;
    let n = parse_usize(lhs)?;
    let parts = rhs
        .split('+')
        .map(parse_usize)
        .collect::<Result<Vec<_>>>()?;
    Ok((n, parts))
}

/// "(3,2)" -> (3, 2)
fn parse_sig(s: &str) -> Result<(usize, usize)> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidFamily(format!("expected (p,q), got {s:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| Error::InvalidFamily(format!("expected (p,q), got {s:?}")))?;
    Ok((parse_usize(a)?, parse_usize(b)?))
}

/// Parses a catalog reference such as "sl_over_product:C:4=2+1+1",
/// "so_over_product:R:(3,2)=(2,1)+(1,1)", "sl_over_sp:C:m=2",
/// "group_manifold:sl2R", or "direct:so7c_over_g2".
pub fn parse_ref(s: &str) -> Result<FamilySpec> {
    let mut it = s.splitn(2, ':');
    let family = it.next().unwrap_or("");
    let rest = it.next().unwrap_or("");
    match family {
        "sl_over_product" => {
            let (field_s, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidFamily(format!("bad reference {s:?}")))?;
            let field = Field::parse(field_s)?;
            let (body, with_center) = match body.strip_suffix(":center") {
                Some(b) => (b, true),
                None => (body, false),
            };
            let (n, parts) = parse_partition(body)?;
            if parts.iter().sum::<usize>() != n {
                return Err(Error::InvalidFamily(format!(
                    "partition does not sum to {n}: {body:?}"
                )));
            }
            Ok(FamilySpec::SlProduct {
                field,
                parts,
                with_center,
            })
        }
        "so_over_product" => {
            let (field_s, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidFamily(format!("bad reference {s:?}")))?;
            match Field::parse(field_s)? {
                Field::C => {
                    let (n, parts) = parse_partition(body)?;
                    Ok(FamilySpec::SoProductC { n, parts })
                }
                Field::R => {
                    let (lhs, rhs) = body.split_once('=').ok_or_else(|| {
                        Error::InvalidFamily(format!("expected (p,q)=blocks, got {body:?}"))
                    })?;
                    let (p, q) = parse_sig(lhs)?;
                    let blocks = rhs
                        .split('+')
                        .map(parse_sig)
                        .collect::<Result<Vec<_>>>()?;
                    Ok(FamilySpec::SoProductR { p, q, blocks })
                }
            }
        }
        "sp_over_product" => {
            let (field_s, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidFamily(format!("bad reference {s:?}")))?;
            let field = Field::parse(field_s)?;
            let (n, parts) = parse_partition(body)?;
            Ok(FamilySpec::SpProduct { field, n, parts })
        }
        "sl_over_so_pq" => {
            let (field_s, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidFamily(format!("bad reference {s:?}")))?;
            match Field::parse(field_s)? {
                Field::R => {
                    let (p, q) = parse_sig(body)?;
                    Ok(FamilySpec::SlOverSoPq { p, q })
                }
                Field::C => Ok(FamilySpec::SlOverSoC {
                    n: parse_usize(body)?,
                }),
            }
        }
        "sl_over_sp" => {
            let (field_s, body) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidFamily(format!("bad reference {s:?}")))?;
            let field = Field::parse(field_s)?;
            let m = parse_usize(body.strip_prefix("m=").unwrap_or(body))?;
            Ok(FamilySpec::SlOverSp { field, m })
        }
        "group_manifold" => Ok(FamilySpec::GroupManifold {
            base: BaseAlgebra::parse(rest)?,
        }),
        "complexification" => Ok(FamilySpec::Complexification {
            base: BaseAlgebra::parse(rest)?,
        }),
        "direct" => Ok(FamilySpec::Direct {
            name: rest.to_string(),
        }),
        other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
    }
}

/// Builds the weight data (and ambient Weyl data when within caps) for a
/// family instance.
pub fn build_pair(spec: &FamilySpec) -> Result<HomogeneousPair> {
    match spec {
        FamilySpec::SlProduct {
            field,
            parts,
            with_center,
        } => sl_product(*field, parts, *with_center, &spec.canonical_ref()),
        FamilySpec::SoProductC { n, parts } => so_product_c(*n, parts, &spec.canonical_ref()),
        FamilySpec::SoProductR { p, q, blocks } => {
            so_product_r(*p, *q, blocks, &spec.canonical_ref())
        }
        FamilySpec::SpProduct { field, n, parts } => {
            sp_product(*field, *n, parts, &spec.canonical_ref())
        }
        FamilySpec::SlOverSoPq { p, q } => sl_over_so_pq(*p, *q, &spec.canonical_ref()),
        FamilySpec::SlOverSoC { n } => sl_over_so_c(*n, &spec.canonical_ref()),
        FamilySpec::SlOverSp { field, m } => sl_over_sp(*field, *m, &spec.canonical_ref()),
        FamilySpec::GroupManifold { base } => group_manifold(base, &spec.canonical_ref()),
        FamilySpec::Complexification { base } => complexification(base, &spec.canonical_ref()),
        FamilySpec::Direct { name } => direct_entry(name),
    }
}

/// Hand-entered pairs outside the parametric families.
pub fn direct_entry(name: &str) -> Result<HomogeneousPair> {
    match name {
        "so7c_over_g2" => so7c_over_g2(),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}

// Chart builders -------------------------------------------------------

/// Standard slots of a product of type A blocks on the zero-sum chart.
/// Block i of size n owns coordinates [off, off+n-1); slot a < n-1 carries
/// u_{off+a} and the last slot carries minus their sum.  With the center
/// flag, r-1 trailing coordinates z_i shift all slots of block i by c_i,
/// where c_r balances the global trace (rational coefficients).
fn sl_slots(parts: &[usize], with_center: bool) -> Vec<LinearForm> {
    let r = parts.len();
    let d0: usize = parts.iter().map(|n| n - 1).sum();
    let d = d0 + if with_center { r - 1 } else { 0 };
    let mut slots = Vec::new();
    let mut off = 0;
    for (i, &ni) in parts.iter().enumerate() {
        let mut center = vec![Rational::zero(); d];
        if with_center {
            if i + 1 < r {
                center[d0 + i] = Rational::one();
            } else {
                for (j, &nj) in parts.iter().enumerate().take(r - 1) {
                    center[d0 + j] = -rat(nj as i64, ni as i64);
                }
            }
        }
        for a in 0..ni {
            let mut c = center.clone();
            if a + 1 < ni {
                c[off + a] += Rational::one();
            } else {
                for j in 0..ni - 1 {
                    c[off + j] -= Rational::one();
                }
            }
            slots.push(LinearForm(c));
        }
        off += ni - 1;
    }
    slots
}

/// +/-x slots of one B/C/D block of split rank m starting at coordinate
/// `off`, followed by `zeros` zero slots, in dimension d.
fn bcd_slots(d: usize, off: usize, m: usize, zeros: usize) -> Vec<LinearForm> {
    let mut slots = Vec::new();
    for k in 0..m {
        let mut c = vec![0i64; d];
        c[off + k] = 1;
        slots.push(LinearForm::from_ints(&c));
        c[off + k] = -1;
        slots.push(LinearForm::from_ints(&c));
    }
    for _ in 0..zeros {
        slots.push(LinearForm::zeros(d));
    }
    slots
}

/// Adjoint weights of a type A algebra on given standard slots: all
/// pairwise differences of distinct slots (equal slots fold into the zero
/// space).  The Cartan contribution is NOT included here.
fn delta_type_a(slots: &[LinearForm], dim: usize) -> Result<WeightMultiset> {
    let mut w = WeightMultiset::new(dim);
    for (a, sa) in slots.iter().enumerate() {
        for (b, sb) in slots.iter().enumerate() {
            if a != b {
                w.insert(sa.sub(sb)?, 1)?;
            }
        }
    }
    Ok(w)
}

/// Exterior-square weights (orthogonal algebras): sums over slot pairs a < b.
fn lambda2(slots: &[LinearForm], dim: usize) -> Result<WeightMultiset> {
    let mut w = WeightMultiset::new(dim);
    for a in 0..slots.len() {
        for b in (a + 1)..slots.len() {
            w.insert(slots[a].add(&slots[b])?, 1)?;
        }
    }
    Ok(w)
}

/// Symmetric-square weights (symplectic algebras): sums over slot pairs
/// a <= b.
fn sym2(slots: &[LinearForm], dim: usize) -> Result<WeightMultiset> {
    let mut w = WeightMultiset::new(dim);
    for a in 0..slots.len() {
        for b in a..slots.len() {
            w.insert(slots[a].add(&slots[b])?, 1)?;
        }
    }
    Ok(w)
}

/// Standard-module weight multiset from a slot list.
fn slots_multiset(slots: &[LinearForm], dim: usize) -> Result<WeightMultiset> {
    let mut w = WeightMultiset::new(dim);
    for s in slots {
        w.insert(s.clone(), 1)?;
    }
    Ok(w)
}

// Ambient Weyl helpers --------------------------------------------------

const TYPE_A_SLOT_CAP: usize = 9;
const BCD_RANK_CAP: usize = 6;

/// Ambient data for a type A group acting on unreduced coordinates: one
/// ambient coordinate per standard slot, the symmetric group permuting
/// them, membership cutting out the chart image.
fn ambient_type_a(slots: &[LinearForm], memb: Vec<LinearForm>) -> Result<AmbientWeyl> {
    let rows: Vec<Vec<Rational>> = slots.iter().map(|f| f.0.clone()).collect();
    AmbientWeyl::new(
        slots.len(),
        Matrix::from_rows(rows)?,
        vec![WeylComponent::Permutations(slots.len())],
        memb,
    )
}

/// Ambient data for B/C/D groups: the chart embeds as the first d of
/// `rank` signed coordinates.
fn ambient_bcd(rank: usize, d: usize, comp: WeylComponent) -> Result<AmbientWeyl> {
    let mut embed = Matrix::zero(rank, d);
    for k in 0..d {
        *embed.at_mut(k, k) = Rational::one();
    }
    let memb = (d..rank).map(|j| unit_form(rank, j)).collect();
    AmbientWeyl::new(rank, embed, vec![comp], memb)
}

fn unit_form(dim: usize, j: usize) -> LinearForm {
    let mut c = vec![0i64; dim];
    c[j] = 1;
    LinearForm::from_ints(&c)
}

/// Sum of ambient unit coordinates over an index range.
fn range_sum_form(dim: usize, range: std::ops::Range<usize>) -> LinearForm {
    let mut c = vec![0i64; dim];
    for j in range {
        c[j] = 1;
    }
    LinearForm::from_ints(&c)
}

fn so_component(p: usize, q: usize) -> WeylComponent {
    if p == q {
        WeylComponent::EvenSignedPermutations(q)
    } else {
        WeylComponent::SignedPermutations(q)
    }
}

// Family builders -------------------------------------------------------

fn sl_product(
    field: Field,
    parts: &[usize],
    with_center: bool,
    label: &str,
) -> Result<HomogeneousPair> {
    if parts.len() < 2 || parts.iter().any(|&n| n == 0) {
        return Err(Error::InvalidFamily(
            "need a partition into at least two positive parts".to_string(),
        ));
    }
    let n: usize = parts.iter().sum();
    let r = parts.len();
    let d0: usize = parts.iter().map(|x| x - 1).sum();
    let d = d0 + if with_center { r - 1 } else { 0 };
    let slots = sl_slots(parts, with_center);

    let mut g = delta_type_a(&slots, d)?;
    g.add_zero(n - 1);
    let mut h = WeightMultiset::new(d);
    let mut start = 0;
    for &ni in parts {
        let block = delta_type_a(&slots[start..start + ni], d)?;
        h = h.union(&block)?;
        h.add_zero(ni - 1);
        start += ni;
    }
    let g = g.scaled(field.mult_scale());
    let h = h.scaled(field.mult_scale());

    let ambient = if n <= TYPE_A_SLOT_CAP {
        let memb = if with_center {
            vec![range_sum_form(n, 0..n)]
        } else {
            let mut forms = Vec::new();
            let mut s = 0;
            for &ni in parts {
                forms.push(range_sum_form(n, s..s + ni));
                s += ni;
            }
            forms
        };
        Some(ambient_type_a(&slots, memb)?)
    } else {
        None
    };
    HomogeneousPair::new(label, g, h, ambient)
}

fn so_product_r(
    p: usize,
    q: usize,
    blocks: &[(usize, usize)],
    label: &str,
) -> Result<HomogeneousPair> {
    if p < q {
        return Err(Error::InvalidFamily(
            "signature must be written (p,q) with p >= q".to_string(),
        ));
    }
    if blocks.is_empty() || blocks.iter().any(|&(a, b)| a + b == 0) {
        return Err(Error::InvalidFamily("need at least one nonempty block".to_string()));
    }
    let sum_p: usize = blocks.iter().map(|b| b.0).sum();
    let sum_q: usize = blocks.iter().map(|b| b.1).sum();
    if sum_p > p || sum_q > q {
        return Err(Error::InvalidFamily(format!(
            "blocks exceed the ({p},{q}) budget: sum ({sum_p},{sum_q})"
        )));
    }
    let mins: Vec<usize> = blocks.iter().map(|&(a, b)| a.min(b)).collect();
    let d: usize = mins.iter().sum();

    let mut all = Vec::new();
    let mut h = WeightMultiset::new(d);
    let mut off = 0;
    for (&(a, b), &m) in blocks.iter().zip(mins.iter()) {
        let slots = bcd_slots(d, off, m, a + b - 2 * m);
        h = h.union(&lambda2(&slots, d)?)?;
        all.extend(slots);
        off += m;
    }
    let used: usize = blocks.iter().map(|&(a, b)| a + b).sum();
    for _ in 0..(p + q - used) {
        all.push(LinearForm::zeros(d));
    }
    let g = lambda2(&all, d)?;

    let ambient = if (1..=BCD_RANK_CAP).contains(&q) {
        Some(ambient_bcd(q, d, so_component(p, q))?)
    } else {
        None
    };
    HomogeneousPair::new(label, g, h, ambient)
}

fn so_product_c(n: usize, parts: &[usize], label: &str) -> Result<HomogeneousPair> {
    if parts.is_empty() || parts.iter().any(|&x| x == 0) {
        return Err(Error::InvalidFamily("need positive parts".to_string()));
    }
    let used: usize = parts.iter().sum();
    if used > n {
        return Err(Error::InvalidFamily(format!(
            "parts sum {used} exceeds n = {n}"
        )));
    }
    let mins: Vec<usize> = parts.iter().map(|&x| x / 2).collect();
    let d: usize = mins.iter().sum();

    let mut all = Vec::new();
    let mut h = WeightMultiset::new(d);
    let mut off = 0;
    for (&ni, &m) in parts.iter().zip(mins.iter()) {
        let slots = bcd_slots(d, off, m, ni - 2 * m);
        h = h.union(&lambda2(&slots, d)?)?;
        all.extend(slots);
        off += m;
    }
    for _ in 0..(n - used) {
        all.push(LinearForm::zeros(d));
    }
    let g = lambda2(&all, d)?.scaled(2);
    let h = h.scaled(2);

    let rank = n / 2;
    let ambient = if (1..=BCD_RANK_CAP).contains(&rank) {
        let comp = if n % 2 == 0 {
            WeylComponent::EvenSignedPermutations(rank)
        } else {
            WeylComponent::SignedPermutations(rank)
        };
        Some(ambient_bcd(rank, d, comp)?)
    } else {
        None
    };
    HomogeneousPair::new(label, g, h, ambient)
}

fn sp_product(field: Field, n: usize, parts: &[usize], label: &str) -> Result<HomogeneousPair> {
    if parts.is_empty() || parts.iter().any(|&x| x == 0) {
        return Err(Error::InvalidFamily("need positive parts".to_string()));
    }
    let used: usize = parts.iter().sum();
    if used > n {
        return Err(Error::InvalidFamily(format!(
            "parts sum {used} exceeds n = {n}"
        )));
    }
    let d = used;
    let mut all = Vec::new();
    let mut h = WeightMultiset::new(d);
    let mut off = 0;
    for &ni in parts {
        let slots = bcd_slots(d, off, ni, 0);
        h = h.union(&sym2(&slots, d)?)?;
        all.extend(slots);
        off += ni;
    }
    for _ in 0..(2 * (n - used)) {
        all.push(LinearForm::zeros(d));
    }
    let g = sym2(&all, d)?.scaled(field.mult_scale());
    let h = h.scaled(field.mult_scale());

    let ambient = if (1..=BCD_RANK_CAP).contains(&n) {
        Some(ambient_bcd(n, d, WeylComponent::SignedPermutations(n))?)
    } else {
        None
    };
    HomogeneousPair::new(label, g, h, ambient)
}

/// Interleaved +/- standard slots for a rank-q form algebra inside a type A
/// ambient group: slots 2k and 2k+1 carry +/-x_k, then `zeros` zero slots.
fn interleaved_slots(d: usize, m: usize, zeros: usize) -> Vec<LinearForm> {
    let mut slots = Vec::new();
    for k in 0..m {
        let mut c = vec![0i64; d];
        c[k] = 1;
        slots.push(LinearForm::from_ints(&c));
        c[k] = -1;
        slots.push(LinearForm::from_ints(&c));
    }
    for _ in 0..zeros {
        slots.push(LinearForm::zeros(d));
    }
    slots
}

/// Membership forms for interleaved charts: slot pairs sum to zero, zero
/// slots vanish.
fn interleaved_membership(n: usize, m: usize) -> Vec<LinearForm> {
    let mut forms = Vec::new();
    for k in 0..m {
        let mut c = vec![0i64; n];
        c[2 * k] = 1;
        c[2 * k + 1] = 1;
        forms.push(LinearForm::from_ints(&c));
    }
    for j in 2 * m..n {
        forms.push(unit_form(n, j));
    }
    forms
}

fn sl_over_form_algebra(
    slots: &[LinearForm],
    d: usize,
    n: usize,
    h: WeightMultiset,
    scale: usize,
    label: &str,
) -> Result<HomogeneousPair> {
    let mut g = delta_type_a(slots, d)?;
    g.add_zero(n - 1);
    let g = g.scaled(scale);
    let h = h.scaled(scale);
    let ambient = if n <= TYPE_A_SLOT_CAP {
        Some(ambient_type_a(slots, interleaved_membership(n, d))?)
    } else {
        None
    };
    HomogeneousPair::new(label, g, h, ambient)
}

fn sl_over_so_pq(p: usize, q: usize, label: &str) -> Result<HomogeneousPair> {
    let (p, q) = (p.max(q), p.min(q));
    if p + q < 2 {
        return Err(Error::InvalidFamily("need p + q >= 2".to_string()));
    }
    let n = p + q;
    let slots = interleaved_slots(q, q, p - q);
    let h = lambda2(&slots, q)?;
    sl_over_form_algebra(&slots, q, n, h, 1, label)
}

fn sl_over_so_c(n: usize, label: &str) -> Result<HomogeneousPair> {
    if n < 2 {
        return Err(Error::InvalidFamily("need n >= 2".to_string()));
    }
    let m = n / 2;
    let slots = interleaved_slots(m, m, n - 2 * m);
    let h = lambda2(&slots, m)?;
    sl_over_form_algebra(&slots, m, n, h, 2, label)
}

fn sl_over_sp(field: Field, m: usize, label: &str) -> Result<HomogeneousPair> {
    if m < 1 {
        return Err(Error::InvalidFamily("need m >= 1".to_string()));
    }
    let slots = interleaved_slots(m, m, 0);
    let h = sym2(&slots, m)?;
    sl_over_form_algebra(&slots, m, 2 * m, h, field.mult_scale(), label)
}

/// Chart, adjoint weights, and one-factor ambient data for a base algebra.
struct BaseData {
    adjoint: WeightMultiset,
    ag: usize,
    comp: WeylComponent,
    embed_rows: Vec<Vec<Rational>>,
    memb: Vec<LinearForm>,
}

fn base_data(base: &BaseAlgebra) -> Result<BaseData> {
    match base {
        BaseAlgebra::SlR(n) => {
            let slots = sl_slots(&[*n], false);
            let d = n - 1;
            let mut adjoint = delta_type_a(&slots, d)?;
            adjoint.add_zero(n - 1);
            Ok(BaseData {
                adjoint,
                ag: *n,
                comp: WeylComponent::Permutations(*n),
                embed_rows: slots.iter().map(|f| f.0.clone()).collect(),
                memb: vec![range_sum_form(*n, 0..*n)],
            })
        }
        BaseAlgebra::SoPq(p, q) => {
            if p < q || *q < 1 {
                return Err(Error::InvalidFamily(
                    "base signature must satisfy p >= q >= 1".to_string(),
                ));
            }
            let slots = bcd_slots(*q, 0, *q, p - q);
            Ok(BaseData {
                adjoint: lambda2(&slots, *q)?,
                ag: *q,
                comp: so_component(*p, *q),
                embed_rows: Matrix::identity(*q).row_vec(),
                memb: Vec::new(),
            })
        }
        BaseAlgebra::SpR(m) => {
            let slots = bcd_slots(*m, 0, *m, 0);
            Ok(BaseData {
                adjoint: sym2(&slots, *m)?,
                ag: *m,
                comp: WeylComponent::SignedPermutations(*m),
                embed_rows: Matrix::identity(*m).row_vec(),
                memb: Vec::new(),
            })
        }
    }
}

fn component_within_cap(comp: &WeylComponent) -> bool {
    match comp {
        WeylComponent::Permutations(k) => *k <= TYPE_A_SLOT_CAP,
        WeylComponent::SignedPermutations(k) | WeylComponent::EvenSignedPermutations(k) => {
            *k <= BCD_RANK_CAP
        }
    }
}

/// G1 x G1 over the diagonal copy: h and the complement are isomorphic
/// copies of the base adjoint module.
fn group_manifold(base: &BaseAlgebra, label: &str) -> Result<HomogeneousPair> {
    let bd = base_data(base)?;
    let h = bd.adjoint.clone();
    let g = bd.adjoint.scaled(2);
    let ambient = if component_within_cap(&bd.comp) {
        let ag2 = 2 * bd.ag;
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(ag2);
        rows.extend(bd.embed_rows.iter().cloned());
        rows.extend(bd.embed_rows.iter().cloned());
        let mut memb = Vec::new();
        for shift in [0, bd.ag] {
            for f in &bd.memb {
                let mut c = vec![Rational::zero(); ag2];
                for (j, v) in f.0.iter().enumerate() {
                    c[shift + j] = v.clone();
                }
                memb.push(LinearForm(c));
            }
        }
        for j in 0..bd.ag {
            let mut c = vec![Rational::zero(); ag2];
            c[j] = Rational::one();
            c[bd.ag + j] = -Rational::one();
            memb.push(LinearForm(c));
        }
        Some(AmbientWeyl::new(
            ag2,
            Matrix::from_rows(rows)?,
            vec![bd.comp.clone(), bd.comp],
            memb,
        )?)
    } else {
        None
    };
    HomogeneousPair::new(label, g, h, ambient)
}

/// Complex form of the base over the base: the complement is the imaginary
/// copy of h, hence carries the same weights.
fn complexification(base: &BaseAlgebra, label: &str) -> Result<HomogeneousPair> {
    let bd = base_data(base)?;
    let h = bd.adjoint.clone();
    let g = bd.adjoint.scaled(2);
    let ambient = match base {
        BaseAlgebra::SlR(_) => {
            if component_within_cap(&bd.comp) {
                Some(AmbientWeyl::new(
                    bd.ag,
                    Matrix::from_rows(bd.embed_rows.clone())?,
                    vec![bd.comp.clone()],
                    bd.memb.clone(),
                )?)
            } else {
                None
            }
        }
        BaseAlgebra::SoPq(p, q) => {
            let n = p + q;
            let rank = n / 2;
            let comp = if n % 2 == 0 {
                WeylComponent::EvenSignedPermutations(rank)
            } else {
                WeylComponent::SignedPermutations(rank)
            };
            if component_within_cap(&comp) && rank >= 1 {
                let mut embed = Matrix::zero(rank, *q);
                for k in 0..*q {
                    *embed.at_mut(k, k) = Rational::one();
                }
                let memb = (*q..rank).map(|j| unit_form(rank, j)).collect();
                Some(AmbientWeyl::new(rank, embed, vec![comp], memb)?)
            } else {
                None
            }
        }
        BaseAlgebra::SpR(m) => Some(AmbientWeyl::new(
            *m,
            Matrix::identity(*m),
            vec![WeylComponent::SignedPermutations(*m)],
            Vec::new(),
        )?),
    };
    HomogeneousPair::new(label, g, h, ambient)
}

/// so(7,C) over the complex G2 subalgebra, on the zero-sum chart (t1, t2)
/// with e1 = t1, e2 = t2, e3 = -t1-t2.  The subalgebra weights are its 12
/// roots; the complement is the 7-dimensional module whose nonzero weights
/// are the 6 short roots.  All real multiplicities are 2.
fn so7c_over_g2() -> Result<HomogeneousPair> {
    let d = 2;
    let short: [[i64; 2]; 3] = [[1, -1], [2, 1], [1, 2]];
    let long: [[i64; 2]; 3] = [[3, 0], [0, 3], [3, 3]];
    let mut h = WeightMultiset::new(d);
    for root in short.iter().chain(long.iter()) {
        h.insert(LinearForm::from_ints(root), 2)?;
        h.insert(LinearForm::from_ints(&[-root[0], -root[1]]), 2)?;
    }
    h.add_zero(4);
    let mut q = WeightMultiset::new(d);
    for root in short.iter() {
        q.insert(LinearForm::from_ints(root), 2)?;
        q.insert(LinearForm::from_ints(&[-root[0], -root[1]]), 2)?;
    }
    q.add_zero(2);
    let g = h.union(&q)?;

    let embed = Matrix::from_rows(vec![
        vec![rat(1, 1), rat(-1, 1)],
        vec![rat(1, 1), rat(2, 1)],
        vec![rat(2, 1), rat(1, 1)],
    ])?;
    let memb = vec![LinearForm::from_ints(&[1, 1, -1])];
    let ambient = AmbientWeyl::new(
        3,
        embed,
        vec![WeylComponent::SignedPermutations(3)],
        memb,
    )?;
    HomogeneousPair::new("direct:so7c_over_g2", g, h, Some(ambient))
}

/// Standard volume-preserving action of sl(n,R) on R^n, in the zero-sum
/// chart: module weights are the n standard slots.
pub fn standard_linear_action(n: usize) -> Result<LinearActionSpec> {
    if n < 2 {
        return Err(Error::InvalidFamily("need n >= 2".to_string()));
    }
    let slots = sl_slots(&[n], false);
    let d = n - 1;
    let mut h = delta_type_a(&slots, d)?;
    h.add_zero(n - 1);
    let v = slots_multiset(&slots, d)?;
    LinearActionSpec::new(format!("sl({n},R) on R^{n}"), h, v)
}

// Sweep enumeration helpers ---------------------------------------------

/// All partitions of n into at least `min_parts` positive parts, each list
/// nonincreasing.
pub fn partitions(n: usize, min_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        let top = max.min(rem);
        for k in (1..=top).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.into_iter().filter(|p| p.len() >= min_parts).collect()
}

/// All nonincreasing block lists (p_i, q_i) with sum p_i <= p, sum q_i <= q
/// and every block nonempty.  Blocks are ordered lexicographically
/// nonincreasing, which makes each multiset appear exactly once.
pub fn so_block_lists(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        pl: usize,
        ql: usize,
        max: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for a in (0..=max.0.min(pl)).rev() {
            let btop = if a == max.0 { max.1 } else { ql };
            for b in (0..=btop.min(ql)).rev() {
                if a + b == 0 {
                    continue;
                }
                cur.push((a, b));
                rec(pl - a, ql - b, (a, b), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p, q, (p, q), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat_int, Vector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn build(s: &str) -> HomogeneousPair {
        build_pair(&parse_ref(s).unwrap()).unwrap()
    }

    #[test]
    fn group_manifold_rank_one_matches_hand_data() {
        let pair = build("group_manifold:sl2R");
        assert_eq!(pair.dim_a(), 1);
        let two = LinearForm::from_ints(&[2]);
        assert_eq!(pair.g().mult_of(&two), 2);
        assert_eq!(pair.h().mult_of(&two), 1);
        assert_eq!(pair.q().mult_of(&two), 1);
        assert_eq!(pair.q().mult_of(&two.neg()), 1);
        assert_eq!(pair.g().dim_zero(), 2);
        assert_eq!(pair.q().dim_zero(), 1);
    }

    #[test]
    fn dimension_bookkeeping_across_families() {
        // (ref, expected dim g, expected dim h)
        let cases = [
            ("sl_over_product:R:3=2+1", 8, 3),
            ("sl_over_product:C:4=2+1+1", 30, 6),
            ("sl_over_product:R:5=3+2:center", 24, 11),
            ("so_over_product:R:(3,2)=(2,1)+(1,1)", 10, 4),
            ("so_over_product:C:6=3+3", 30, 12),
            ("sp_over_product:C:3=2+1", 42, 26),
            ("sp_over_product:R:2=1+1", 10, 6),
            ("sl_over_so_pq:R:(3,2)", 24, 10),
            ("sl_over_so_pq:C:4", 30, 12),
            ("sl_over_sp:R:m=2", 15, 10),
            ("sl_over_sp:C:m=2", 30, 20),
            ("group_manifold:so32", 20, 10),
            ("complexification:sp2R", 20, 10),
            ("direct:so7c_over_g2", 42, 28),
        ];
        for (r, dim_g, dim_h) in cases {
            let pair = build(r);
            assert_eq!(pair.g().total_dim(), dim_g, "dim g of {r}");
            assert_eq!(pair.h().total_dim(), dim_h, "dim h of {r}");
            assert_eq!(
                pair.q().total_dim(),
                dim_g - dim_h,
                "dim q of {r}"
            );
        }
    }

    #[test]
    fn additivity_of_support_functions() {
        let refs = [
            "sl_over_product:C:4=2+1+1",
            "so_over_product:R:(4,3)=(2,2)+(1,1)",
            "sl_over_so_pq:R:(3,2)",
            "direct:so7c_over_g2",
            "sl_over_product:R:5=3+2:center",
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for r in refs {
            let pair = build(r);
            for _ in 0..100 {
                let y = Vector::from_ints(
                    &(0..pair.dim_a())
                        .map(|_| rng.gen_range(-9i64..=9))
                        .collect::<Vec<_>>(),
                );
                let lhs = pair.rho_g(&y).unwrap();
                let rhs = pair.rho_h(&y).unwrap() + pair.rho_q(&y).unwrap();
                assert_eq!(lhs, rhs, "additivity at {y:?} for {r}");
            }
        }
    }

    #[test]
    fn complement_of_symplectic_in_sl4c_has_real_dimension_ten() {
        let pair = build("sl_over_sp:C:m=2");
        assert_eq!(pair.q().total_dim(), 10);
        assert_eq!(pair.q().dim_zero(), 2);
    }

    #[test]
    fn g2_entry_matches_exterior_square_of_the_embedded_module() {
        let pair = build("direct:so7c_over_g2");
        // Standard 7-dim module slots pulled back through the ambient
        // embedding: +/- of the three positive short roots plus one zero.
        let slots: Vec<LinearForm> = [[1i64, -1], [1, 2], [2, 1]]
            .iter()
            .flat_map(|c| {
                [
                    LinearForm::from_ints(c),
                    LinearForm::from_ints(&[-c[0], -c[1]]),
                ]
            })
            .chain(std::iter::once(LinearForm::zeros(2)))
            .collect();
        let ext = lambda2(&slots, 2).unwrap().scaled(2);
        assert_eq!(&ext, pair.g());
    }

    #[test]
    fn refs_round_trip() {
        let refs = [
            "sl_over_product:C:4=2+1+1",
            "sl_over_product:R:5=3+2:center",
            "so_over_product:R:(3,2)=(2,1)+(1,1)",
            "so_over_product:C:6=3+3",
            "sp_over_product:C:3=2+1",
            "sl_over_so_pq:R:(3,2)",
            "sl_over_so_pq:C:4",
            "sl_over_sp:C:m=2",
            "group_manifold:sl2R",
            "complexification:so32",
            "direct:so7c_over_g2",
        ];
        for r in refs {
            let spec = parse_ref(r).unwrap();
            assert_eq!(spec.canonical_ref(), r);
            assert_eq!(parse_ref(&spec.canonical_ref()).unwrap(), spec);
        }
    }

    #[test]
    fn bad_refs_are_rejected() {
        for r in [
            "sl_over_product:C:4=2+1",
            "sl_over_product:Q:4=2+2",
            "so_over_product:R:(2,3)=(1,1)",
            "so_over_product:R:(3,2)=(3,2)+(1,1)",
            "sl_over_product:C:3=3",
            "direct:foo",
            "nonsense:1",
        ] {
            assert!(parse_ref(r).and_then(|s| build_pair(&s)).is_err(), "{r}");
        }
    }

    #[test]
    fn partition_enumeration() {
        let parts = partitions(4, 2);
        assert_eq!(
            parts,
            vec![vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(8, 2).len(), 21);
    }

    #[test]
    fn block_enumeration_respects_budgets() {
        let lists = so_block_lists(2, 1);
        for l in &lists {
            let sp: usize = l.iter().map(|b| b.0).sum();
            let sq: usize = l.iter().map(|b| b.1).sum();
            assert!(sp <= 2 && sq <= 1);
            for w in l.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
        assert!(lists.contains(&vec![(2, 1)]));
        assert!(lists.contains(&vec![(1, 1), (1, 0)]));
        assert!(lists.contains(&vec![(1, 0), (0, 1)]));
        let mut dedup = lists.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), lists.len());
    }

    #[test]
    fn standard_action_weights() {
        let act = standard_linear_action(3).unwrap();
        assert_eq!(act.dim_a(), 2);
        assert_eq!(act.v_weights().total_dim(), 3);
        assert!(act.v_weights().is_zero_sum());
        assert_eq!(act.h_weights().total_dim(), 8);
        assert_eq!(
            act.v_weights().rho(&Vector::from_ints(&[1, 0])).unwrap(),
            rat_int(1)
        );
    }

    #[test]
    fn zero_rank_pairs_are_constructible() {
        let pair = build("sl_over_product:R:2=1+1");
        assert_eq!(pair.dim_a(), 0);
        assert_eq!(pair.g().total_dim(), 3);
        assert_eq!(pair.g().dim_zero(), 3);
        assert_eq!(pair.h().total_dim(), 0);
    }
}
