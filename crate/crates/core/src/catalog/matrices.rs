//! Independent weight computation from explicit matrix realizations.
//!
//! Family constructors in the parent module write weights down by chart
//! rules.  This module recomputes them from actual matrices: given a basis
//! of g inside gl(V) and commuting split-torus generators, it decomposes
//! the adjoint action into simultaneous integer eigenspaces by exact
//! rational kernel computations.  Agreement of both routes is asserted in
//! tests; neither side is allowed to feed the other.

use num::{One, Signed, ToPrimitive, Zero};

use super::{BaseAlgebra, FamilySpec, Field};
use crate::error::Error;
use crate::linalg::{kernel_basis, LinearForm, LinearSolver, Matrix, Rational, Vector};
use crate::weights::WeightMultiset;
use crate::Result;

/// A Lie algebra of matrices together with the split torus generators that
/// define the chart.  `a_basis[j]` corresponds to chart coordinate j.
pub struct MatrixAlgebra {
    pub dim_v: usize,
    pub g_basis: Vec<Matrix>,
    pub a_basis: Vec<Matrix>,
}

fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

fn is_zero_matrix(m: &Matrix) -> bool {
    (0..m.nrows()).all(|r| m.row(r).iter().all(Zero::is_zero))
}

fn vec_of(m: &Matrix) -> Vector {
    let mut data = Vec::with_capacity(m.nrows() * m.ncols());
    for r in 0..m.nrows() {
        data.extend(m.row(r).iter().cloned());
    }
    Vector(data)
}

fn columns_matrix(cols: &[Vector]) -> Result<Matrix> {
    let nrows = cols.first().map_or(0, Vector::dim);
    let mut rows = vec![vec![Rational::zero(); cols.len()]; nrows];
    for (c, col) in cols.iter().enumerate() {
        if col.dim() != nrows {
            return Err(Error::DimensionMismatch {
                expected: nrows,
                got: col.dim(),
            });
        }
        for (r, v) in col.0.iter().enumerate() {
            rows[r][c] = v.clone();
        }
    }
    Matrix::from_rows(rows)
}

/// Certified bound on integer eigenvalues: the max-row-sum norm dominates
/// the spectral radius.
fn eigen_bound(m: &Matrix) -> Result<i64> {
    let mut best = Rational::zero();
    for r in 0..m.nrows() {
        let s: Rational = m.row(r).iter().map(Signed::abs).sum();
        if s > best {
            best = s;
        }
    }
    best.ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Internal("eigenvalue bound does not fit in i64".to_string()))
}

/// Splits the column span of `basis` (coordinates in g) into joint integer
/// eigenspaces of the maps `ads`, returning (eigenvalue tuple, dimension)
/// per summand.  Errors with `NotSplit` when any restriction has spectrum
/// outside the integers.
fn joint_eigenspaces(
    ads: &[Matrix],
    basis: Vec<Vector>,
) -> Result<Vec<(Vec<Rational>, usize)>> {
    let mut spaces: Vec<(Vec<Rational>, Vec<Vector>)> = vec![(Vec::new(), basis)];
    for ad in ads {
        let mut next = Vec::new();
        for (tuple, cols) in spaces {
            if cols.is_empty() {
                continue;
            }
            let m = columns_matrix(&cols)?;
            let solver = LinearSolver::new(&m);
            if solver.rank() != cols.len() {
                return Err(Error::Internal(
                    "eigenspace basis lost independence".to_string(),
                ));
            }
            // Restriction of ad to the span, in the coordinates of `cols`.
            let mut rcols = Vec::with_capacity(cols.len());
            for col in &cols {
                let image = ad.mul_vec(col)?;
                let r = solver.solve(&image)?.ok_or_else(|| {
                    Error::InvalidFamily(
                        "subspace is not stable under the torus action".to_string(),
                    )
                })?;
                rcols.push(r);
            }
            let restriction = columns_matrix(&rcols)?;
            let k = cols.len();
            let bound = eigen_bound(&restriction)?;
            let mut found = 0usize;
            for ev in -bound..=bound {
                let mut shifted = restriction.clone();
                for i in 0..k {
                    *shifted.at_mut(i, i) -= Rational::from_integer(ev.into());
                }
                let forms: Vec<LinearForm> = (0..k)
                    .map(|r| LinearForm(shifted.row(r).to_vec()))
                    .collect();
                let ker = kernel_basis(&forms, k)?;
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let lifted: Vec<Vector> = ker
                    .iter()
                    .map(|v| m.mul_vec(v))
                    .collect::<Result<_>>()?;
                let mut t = tuple.clone();
                t.push(Rational::from_integer(ev.into()));
                next.push((t, lifted));
            }
            if found != k {
                return Err(Error::NotSplit(format!(
                    "only {found} of {k} dimensions split into integer eigenspaces"
                )));
            }
        }
        spaces = next;
    }
    Ok(spaces
        .into_iter()
        .map(|(tuple, cols)| (tuple, cols.len()))
        .collect())
}

/// Computes the weight multisets of the torus on g and on the subalgebra
/// spanned by `sub_basis`, entirely from matrices.
pub fn weights_from_matrices(
    alg: &MatrixAlgebra,
    sub_basis: &[Matrix],
) -> Result<(WeightMultiset, WeightMultiset)> {
    let n = alg.dim_v;
    for m in alg
        .g_basis
        .iter()
        .chain(alg.a_basis.iter())
        .chain(sub_basis.iter())
    {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.nrows().max(m.ncols()),
            });
        }
    }
    for (i, a) in alg.a_basis.iter().enumerate() {
        for b in alg.a_basis.iter().skip(i + 1) {
            if !is_zero_matrix(&commutator(a, b)?) {
                return Err(Error::InvalidFamily(
                    "torus generators do not commute".to_string(),
                ));
            }
        }
    }

    let span = columns_matrix(&alg.g_basis.iter().map(vec_of).collect::<Vec<_>>())?;
    let solver = LinearSolver::new(&span);
    if solver.rank() != alg.g_basis.len() {
        return Err(Error::InvalidFamily(
            "algebra basis is linearly dependent".to_string(),
        ));
    }
    // Torus generators must lie in the subalgebra (the chart lives there).
    if !alg.a_basis.is_empty() {
        let sub_span = columns_matrix(&sub_basis.iter().map(vec_of).collect::<Vec<_>>())?;
        let sub_solver = LinearSolver::new(&sub_span);
        for a in &alg.a_basis {
            if sub_solver.solve(&vec_of(a))?.is_none() {
                return Err(Error::InvalidFamily(
                    "torus generator outside the subalgebra".to_string(),
                ));
            }
        }
    }

    // ad(Y_j) as a matrix on the coordinates of g_basis.
    let mut ads = Vec::with_capacity(alg.a_basis.len());
    for y in &alg.a_basis {
        let mut cols = Vec::with_capacity(alg.g_basis.len());
        for b in &alg.g_basis {
            let c = commutator(y, b)?;
            let coords = solver.solve(&vec_of(&c))?.ok_or_else(|| {
                Error::InvalidFamily(
                    "torus generator does not normalize the algebra span".to_string(),
                )
            })?;
            cols.push(coords);
        }
        ads.push(columns_matrix(&cols)?);
    }

    let ng = alg.g_basis.len();
    let full: Vec<Vector> = (0..ng)
        .map(|j| {
            let mut v = vec![Rational::zero(); ng];
            v[j] = Rational::one();
            Vector(v)
        })
        .collect();
    let g_spaces = joint_eigenspaces(&ads, full)?;

    let mut sub_coords = Vec::with_capacity(sub_basis.len());
    for b in sub_basis {
        let coords = solver.solve(&vec_of(b))?.ok_or_else(|| {
            Error::InvalidFamily("subalgebra basis element outside g".to_string(),
            )
        })?;
        sub_coords.push(coords);
    }
    let h_spaces = joint_eigenspaces(&ads, sub_coords)?;

    let d = alg.a_basis.len();
    let to_multiset = |spaces: Vec<(Vec<Rational>, usize)>| -> Result<WeightMultiset> {
        let mut w = WeightMultiset::new(d);
        for (tuple, mult) in spaces {
            w.insert(LinearForm(tuple), mult)?;
        }
        Ok(w)
    };
    Ok((to_multiset(g_spaces)?, to_multiset(h_spaces)?))
}

// Building blocks for realizations --------------------------------------

fn unit(n: usize, r: usize, c: usize) -> Matrix {
    let mut m = Matrix::zero(n, n);
    *m.at_mut(r, c) = Rational::one();
    m
}

fn add_unit(m: &mut Matrix, r: usize, c: usize, v: i64) {
    *m.at_mut(r, c) += Rational::from_integer(v.into());
}

/// Basis of {X : X^T J + J X = 0} for a nondegenerate form matrix J.
/// Works for symmetric J (orthogonal algebras) and alternating J
/// (symplectic algebras).
pub fn form_algebra(j: &Matrix) -> Result<Vec<Matrix>> {
    let n = j.nrows();
    // One linear form per matrix entry of X^T J + J X, unknowns X_{rc}
    // flattened row-major.
    let mut forms = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let mut c = vec![Rational::zero(); n * n];
            for k in 0..n {
                // (X^T J)_{uv} contributes X_{ku} J_{kv}
                c[k * n + u] += j.at(k, v);
                // (J X)_{uv} contributes J_{uk} X_{kv}
                c[k * n + v] += j.at(u, k);
            }
            forms.push(LinearForm(c));
        }
    }
    let kernel = kernel_basis(&forms, n * n)?;
    Ok(kernel
        .into_iter()
        .map(|vec| {
            let mut m = Matrix::zero(n, n);
            for r in 0..n {
                for c in 0..n {
                    *m.at_mut(r, c) = vec.0[r * n + c].clone();
                }
            }
            m
        })
        .collect())
}

/// Embeds a small matrix into dimension n along the given slot list.
fn embed_matrix(small: &Matrix, slots: &[usize], n: usize) -> Matrix {
    let mut m = Matrix::zero(n, n);
    for r in 0..small.nrows() {
        for c in 0..small.ncols() {
            if !small.at(r, c).is_zero() {
                *m.at_mut(slots[r], slots[c]) = small.at(r, c).clone();
            }
        }
    }
    m
}

/// Standard basis of sl(n): off-diagonal units plus simple-root coweights.
pub fn sl_algebra_basis(n: usize) -> Vec<Matrix> {
    let mut basis = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                basis.push(unit(n, r, c));
            }
        }
    }
    for k in 0..n - 1 {
        let mut m = Matrix::zero(n, n);
        add_unit(&mut m, k, k, 1);
        add_unit(&mut m, k + 1, k + 1, -1);
        basis.push(m);
    }
    basis
}

/// Zero-sum chart torus of a type A block on the given slots: generator a
/// has +1 at slot a and -1 at the last slot.
fn type_a_torus(slots: &[usize], n: usize) -> Vec<Matrix> {
    let last = *slots.last().expect("nonempty block");
    slots[..slots.len() - 1]
        .iter()
        .map(|&s| {
            let mut m = Matrix::zero(n, n);
            add_unit(&mut m, s, s, 1);
            add_unit(&mut m, last, last, -1);
            m
        })
        .collect()
}

/// Realification: a complex matrix A + iB acting on C^n becomes
/// [[A, -B], [B, A]] acting on R^{2n}.
fn realify(re: &Matrix, im: &Matrix) -> Matrix {
    let n = re.nrows();
    let mut m = Matrix::zero(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            *m.at_mut(r, c) = re.at(r, c).clone();
            *m.at_mut(n + r, n + c) = re.at(r, c).clone();
            *m.at_mut(r, n + c) = -im.at(r, c);
            *m.at_mut(n + r, c) = im.at(r, c).clone();
        }
    }
    m
}

/// Real basis {b, ib} of the complexification of a real matrix algebra.
fn realify_basis(basis: &[Matrix]) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(2 * basis.len());
    for b in basis {
        let zero = Matrix::zero(b.nrows(), b.ncols());
        out.push(realify(b, &zero));
        out.push(realify(&zero, b));
    }
    out
}

fn realify_real(basis: &[Matrix]) -> Vec<Matrix> {
    basis
        .iter()
        .map(|b| realify(b, &Matrix::zero(b.nrows(), b.ncols())))
        .collect()
}

/// diag(I_p, -I_q).
fn diag_form(p: usize, q: usize) -> Matrix {
    let n = p + q;
    let mut j = Matrix::zero(n, n);
    for k in 0..p {
        add_unit(&mut j, k, k, 1);
    }
    for k in p..n {
        add_unit(&mut j, k, k, -1);
    }
    j
}

/// Hyperbolic symmetric form of rank-m split part in dimension n:
/// J(u_k, w_k) = 1 for k < m on slots [0..m) and [m..2m), identity on the
/// rest.
fn hyperbolic_form(n: usize) -> Matrix {
    let m = n / 2;
    let mut j = Matrix::zero(n, n);
    for k in 0..m {
        add_unit(&mut j, k, m + k, 1);
        add_unit(&mut j, m + k, k, 1);
    }
    for e in 2 * m..n {
        add_unit(&mut j, e, e, 1);
    }
    j
}

/// Standard symplectic form [[0, I], [-I, 0]] in dimension 2m.
fn symplectic_form(m: usize) -> Matrix {
    let mut j = Matrix::zero(2 * m, 2 * m);
    for k in 0..m {
        add_unit(&mut j, k, m + k, 1);
        add_unit(&mut j, m + k, k, -1);
    }
    j
}

/// Hyperbolic-chart torus: diag generators E_{u_k} - E_{w_k} on the given
/// paired slots.
fn paired_torus(us: &[usize], ws: &[usize], n: usize) -> Vec<Matrix> {
    us.iter()
        .zip(ws)
        .map(|(&u, &w)| {
            let mut m = Matrix::zero(n, n);
            add_unit(&mut m, u, u, 1);
            add_unit(&mut m, w, w, -1);
            m
        })
        .collect()
}

/// Split-orthogonal torus in the diagonal-form realization: symmetric
/// pair couplings E_{u,w} + E_{w,u}.
fn so_diag_torus(pairs: &[(usize, usize)], n: usize) -> Vec<Matrix> {
    pairs
        .iter()
        .map(|&(u, w)| {
            let mut m = Matrix::zero(n, n);
            add_unit(&mut m, u, w, 1);
            add_unit(&mut m, w, u, 1);
            m
        })
        .collect()
}

struct Realization {
    alg: MatrixAlgebra,
    sub: Vec<Matrix>,
}

fn base_realization(base: &BaseAlgebra) -> Result<Realization> {
    match base {
        BaseAlgebra::SlR(n) => {
            let basis = sl_algebra_basis(*n);
            let slots: Vec<usize> = (0..*n).collect();
            let a = type_a_torus(&slots, *n);
            Ok(Realization {
                sub: basis.clone(),
                alg: MatrixAlgebra {
                    dim_v: *n,
                    g_basis: basis,
                    a_basis: a,
                },
            })
        }
        BaseAlgebra::SoPq(p, q) => {
            let n = p + q;
            let basis = form_algebra(&diag_form(*p, *q))?;
            let pairs: Vec<(usize, usize)> = (0..*q).map(|k| (k, p + k)).collect();
            let a = so_diag_torus(&pairs, n);
            Ok(Realization {
                sub: basis.clone(),
                alg: MatrixAlgebra {
                    dim_v: n,
                    g_basis: basis,
                    a_basis: a,
                },
            })
        }
        BaseAlgebra::SpR(m) => {
            let basis = form_algebra(&symplectic_form(*m))?;
            let us: Vec<usize> = (0..*m).collect();
            let ws: Vec<usize> = (*m..2 * m).collect();
            let a = paired_torus(&us, &ws, 2 * m);
            Ok(Realization {
                sub: basis.clone(),
                alg: MatrixAlgebra {
                    dim_v: 2 * m,
                    g_basis: basis,
                    a_basis: a,
                },
            })
        }
    }
}

/// Shipped matrix realization of a family instance, or None when the
/// instance has no matrix model (direct entries, center variants).
/// Returns the ambient algebra plus the subalgebra basis.
pub fn realization(spec: &FamilySpec) -> Result<Option<(MatrixAlgebra, Vec<Matrix>)>> {
    let r = match spec {
        FamilySpec::SlProduct {
            field,
            parts,
            with_center,
        } => {
            if *with_center {
                return Ok(None);
            }
            let n: usize = parts.iter().sum();
            let g = sl_algebra_basis(n);
            let mut sub = Vec::new();
            let mut a = Vec::new();
            let mut off = 0;
            for &ni in parts {
                let slots: Vec<usize> = (off..off + ni).collect();
                for &s in &slots {
                    for &t in &slots {
                        if s != t {
                            sub.push(unit(n, s, t));
                        }
                    }
                }
                if ni > 1 {
                    let torus = type_a_torus(&slots, n);
                    sub.extend(torus.iter().cloned());
                    a.extend(torus);
                }
                off += ni;
            }
            Some(build_real_or_complex(*field, n, g, sub, a))
        }
        FamilySpec::SoProductR { p, q, blocks } => {
            let n = p + q;
            let g = form_algebra(&diag_form(*p, *q))?;
            // Block i takes paired indices [po, po+b_i) (plus-slot k pairs
            // with minus-slot k), then extra slots from the unpaired pools.
            let mins: Vec<usize> = blocks.iter().map(|&(a, b)| a.min(b)).collect();
            let total_pairs: usize = mins.iter().sum();
            let mut po = 0;
            let mut plus_pool = total_pairs..*p;
            let mut minus_pool = total_pairs..*q;
            let mut sub = Vec::new();
            let mut a = Vec::new();
            for (&(pi, qi), &bi) in blocks.iter().zip(mins.iter()) {
                let mut plus: Vec<usize> = (po..po + bi).collect();
                for _ in 0..pi - bi {
                    plus.push(plus_pool.next().expect("plus budget checked"));
                }
                let mut minus: Vec<usize> = (po..po + bi).map(|k| p + k).collect();
                for _ in 0..qi - bi {
                    minus.push(p + minus_pool.next().expect("minus budget checked"));
                }
                let slots: Vec<usize> = plus.iter().chain(minus.iter()).copied().collect();
                let small = form_algebra(&diag_form(pi, qi))?;
                sub.extend(small.iter().map(|s| embed_matrix(s, &slots, n)));
                let pairs: Vec<(usize, usize)> = (po..po + bi).map(|k| (k, p + k)).collect();
                a.extend(so_diag_torus(&pairs, n));
                po += bi;
            }
            Some((
                MatrixAlgebra {
                    dim_v: n,
                    g_basis: g,
                    a_basis: a,
                },
                sub,
            ))
        }
        FamilySpec::SoProductC { n, parts } => {
            // Global form: hyperbolic block forms stacked, identity on the
            // remainder; every block keeps its own split part up front.
            let mut j = Matrix::zero(*n, *n);
            let mut off = 0;
            let mut sub_small = Vec::new();
            let mut a_small = Vec::new();
            for &ni in parts {
                let m = ni / 2;
                let jb = hyperbolic_form(ni);
                let slots: Vec<usize> = (off..off + ni).collect();
                for r in 0..ni {
                    for c in 0..ni {
                        if !jb.at(r, c).is_zero() {
                            *j.at_mut(slots[r], slots[c]) = jb.at(r, c).clone();
                        }
                    }
                }
                let small = form_algebra(&jb)?;
                sub_small.extend(small.iter().map(|s| embed_matrix(s, &slots, *n)));
                let us: Vec<usize> = (off..off + m).collect();
                let ws: Vec<usize> = (off + m..off + 2 * m).collect();
                a_small.extend(paired_torus(&us, &ws, *n));
                off += ni;
            }
            for e in off..*n {
                add_unit(&mut j, e, e, 1);
            }
            let g = form_algebra(&j)?;
            Some((
                MatrixAlgebra {
                    dim_v: 2 * n,
                    g_basis: realify_basis(&g),
                    a_basis: realify_real(&a_small),
                },
                realify_basis(&sub_small),
            ))
        }
        FamilySpec::SpProduct { field, n, parts } => {
            let g = form_algebra(&symplectic_form(*n))?;
            let mut sub = Vec::new();
            let mut a = Vec::new();
            let mut off = 0;
            for &ni in parts {
                let xs: Vec<usize> = (off..off + ni).collect();
                let ys: Vec<usize> = (n + off..n + off + ni).collect();
                let slots: Vec<usize> = xs.iter().chain(ys.iter()).copied().collect();
                let small = form_algebra(&symplectic_form(ni))?;
                sub.extend(small.iter().map(|s| embed_matrix(s, &slots, 2 * n)));
                a.extend(paired_torus(&xs, &ys, 2 * n));
                off += ni;
            }
            Some(build_real_or_complex(*field, 2 * n, g, sub, a))
        }
        FamilySpec::SlOverSoPq { p, q } => {
            let (p, q) = (*p.max(q), *p.min(q));
            let n = p + q;
            let g = sl_algebra_basis(n);
            let sub = form_algebra(&diag_form(p, q))?;
            let pairs: Vec<(usize, usize)> = (0..q).map(|k| (k, p + k)).collect();
            let a = so_diag_torus(&pairs, n);
            Some((
                MatrixAlgebra {
                    dim_v: n,
                    g_basis: g,
                    a_basis: a,
                },
                sub,
            ))
        }
        FamilySpec::SlOverSoC { n } => {
            let m = n / 2;
            let g = sl_algebra_basis(*n);
            let sub = form_algebra(&hyperbolic_form(*n))?;
            let us: Vec<usize> = (0..m).collect();
            let ws: Vec<usize> = (m..2 * m).collect();
            let a = paired_torus(&us, &ws, *n);
            Some((
                MatrixAlgebra {
                    dim_v: 2 * n,
                    g_basis: realify_basis(&g),
                    a_basis: realify_real(&a),
                },
                realify_basis(&sub),
            ))
        }
        FamilySpec::SlOverSp { field, m } => {
            let n = 2 * m;
            let g = sl_algebra_basis(n);
            let sub = form_algebra(&symplectic_form(*m))?;
            let us: Vec<usize> = (0..*m).collect();
            let ws: Vec<usize> = (*m..n).collect();
            let a = paired_torus(&us, &ws, n);
            Some(build_real_or_complex(*field, n, g, sub, a))
        }
        FamilySpec::GroupManifold { base } => {
            let b = base_realization(base)?;
            let n = b.alg.dim_v;
            let pad = |m: &Matrix, second: bool| -> Matrix {
                let mut out = Matrix::zero(2 * n, 2 * n);
                let off = if second { n } else { 0 };
                for r in 0..n {
                    for c in 0..n {
                        if !m.at(r, c).is_zero() {
                            *out.at_mut(off + r, off + c) = m.at(r, c).clone();
                        }
                    }
                }
                out
            };
            let mut g = Vec::new();
            for m in &b.alg.g_basis {
                g.push(pad(m, false));
            }
            for m in &b.alg.g_basis {
                g.push(pad(m, true));
            }
            let diag = |m: &Matrix| -> Matrix {
                let mut out = Matrix::zero(2 * n, 2 * n);
                for r in 0..n {
                    for c in 0..n {
                        if !m.at(r, c).is_zero() {
                            *out.at_mut(r, c) = m.at(r, c).clone();
                            *out.at_mut(n + r, n + c) = m.at(r, c).clone();
                        }
                    }
                }
                out
            };
            let sub: Vec<Matrix> = b.sub.iter().map(diag).collect();
            let a: Vec<Matrix> = b.alg.a_basis.iter().map(diag).collect();
            Some((
                MatrixAlgebra {
                    dim_v: 2 * n,
                    g_basis: g,
                    a_basis: a,
                },
                sub,
            ))
        }
        FamilySpec::Complexification { base } => {
            let b = base_realization(base)?;
            Some((
                MatrixAlgebra {
                    dim_v: 2 * b.alg.dim_v,
                    g_basis: realify_basis(&b.alg.g_basis),
                    a_basis: realify_real(&b.alg.a_basis),
                },
                realify_real(&b.sub),
            ))
        }
        FamilySpec::Direct { .. } => None,
    };
    Ok(r)
}

/// Wraps a real realization, realifying everything for complex instances.
fn build_real_or_complex(
    field: Field,
    dim_v: usize,
    g: Vec<Matrix>,
    sub: Vec<Matrix>,
    a: Vec<Matrix>,
) -> (MatrixAlgebra, Vec<Matrix>) {
    match field {
        Field::R => (
            MatrixAlgebra {
                dim_v,
                g_basis: g,
                a_basis: a,
            },
            sub,
        ),
        Field::C => (
            MatrixAlgebra {
                dim_v: 2 * dim_v,
                g_basis: realify_basis(&g),
                a_basis: realify_real(&a),
            },
            realify_basis(&sub),
        ),
    }
}
