//! Coupled sl(2, C) representations `[j1, j2]` and `[j]` with their
//! invariant metrics, chiral projectors and rotation / orthonormal bases.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::cg::clebsch_gordan;
use super::su2::su2_generators;
use super::weight::Weight;
use crate::cvs::MetricOperator;
use crate::error::{Error, Result};
use crate::numkernel::{self, ComplexMatrix, Signature, Tolerances};
use crate::opalg::{self, KindedOperator};
use crate::projections::Projector;

/// Which system of dual bases the matrices of a [`CoupledRep`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Canonical,
    Rotation,
    Orthonormal,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Canonical => "canonical",
            BasisKind::Rotation => "rotation",
            BasisKind::Orthonormal => "orthonormal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "canonical" => Some(BasisKind::Canonical),
            "rotation" => Some(BasisKind::Rotation),
            "orthonormal" => Some(BasisKind::Orthonormal),
            _ => None,
        }
    }
}

/// Label of one basis vector.
///
/// `block` is 0 for the `(j1, j2)` tensor summand and 1 for `(j2, j1)`;
/// diagonal reps only have block 0. Projections are stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// `|lambda> (x) |lambda'>` with slot weights in block order.
    Canonical {
        block: u8,
        twice_lambda: [i32; 2],
    },
    /// `|(ja, jb) s, sigma>`.
    Rotation {
        block: u8,
        twice_s: u32,
        twice_sigma: i32,
    },
    /// `|(+-) s, sigma>`.
    Orthonormal {
        parity: i8,
        twice_s: u32,
        twice_sigma: i32,
    },
}

/// A full coupled representation bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledRep {
    pub j1: Weight,
    pub j2: Weight,
    pub dim: usize,
    pub m: [ComplexMatrix; 3],
    pub n: [ComplexMatrix; 3],
    /// Rotations `I_a = M_a + N_a`.
    pub i: [ComplexMatrix; 3],
    /// Boosts `K_a = -i (M_a - N_a)`.
    pub k: [ComplexMatrix; 3],
    pub metric: MetricOperator,
    pub epsilon: i8,
    pub basis: BasisKind,
    pub labels: Vec<BasisLabel>,
    /// Columns are the current basis vectors in canonical components.
    pub basis_change: ComplexMatrix,
}

impl CoupledRep {
    /// True for the `[j]` family (`j1 = j2`).
    pub fn is_diagonal(&self) -> bool {
        self.j1 == self.j2
    }

    fn from_parts(
        j1: Weight,
        j2: Weight,
        m: [ComplexMatrix; 3],
        n: [ComplexMatrix; 3],
        eta: ComplexMatrix,
        epsilon: i8,
        labels: Vec<BasisLabel>,
    ) -> Result<Self> {
        let dim = eta.rows();
        let (i, k) = rotations_and_boosts(&m, &n);
        let metric = MetricOperator::new(eta, &Tolerances::default())?;
        Ok(Self {
            j1,
            j2,
            dim,
            m,
            n,
            i,
            k,
            metric,
            epsilon,
            basis: BasisKind::Canonical,
            labels,
            basis_change: ComplexMatrix::identity(dim),
        })
    }

    /// Re-expresses every matrix in the basis whose vectors are the columns
    /// of `t` (in current components).
    fn change_basis(&self, t: &ComplexMatrix, basis: BasisKind, labels: Vec<BasisLabel>) -> Result<Self> {
        let tol = Tolerances::default();
        let t_inv = numkernel::inverse(t, &tol)?;
        let sim = |x: &ComplexMatrix| &(&t_inv * x) * t;
        let eta = &(&t.conj_transpose() * self.metric.eta()) * t;
        let m = self.m.each_ref().map(sim);
        let n = self.n.each_ref().map(sim);
        let (i, k) = rotations_and_boosts(&m, &n);
        Ok(Self {
            j1: self.j1,
            j2: self.j2,
            dim: self.dim,
            m,
            n,
            i,
            k,
            metric: MetricOperator::new(eta, &tol)?,
            epsilon: self.epsilon,
            basis,
            labels,
            basis_change: &self.basis_change * t,
        })
    }
}

fn rotations_and_boosts(
    m: &[ComplexMatrix; 3],
    n: &[ComplexMatrix; 3],
) -> ([ComplexMatrix; 3], [ComplexMatrix; 3]) {
    let minus_i = Complex64::new(0.0, -1.0);
    let i = std::array::from_fn(|a| &m[a] + &n[a]);
    let k = std::array::from_fn(|a| (&m[a] - &n[a]).scale(minus_i));
    (i, k)
}

fn parity(exponent: i64) -> i8 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn check_epsilon(epsilon: Option<i8>, default: i8) -> Result<i8> {
    match epsilon {
        None => Ok(default),
        Some(e @ (1 | -1)) => Ok(e),
        Some(e) => Err(Error::InvalidWeights(format!("epsilon must be +1 or -1, got {e}"))),
    }
}

/// `epsilon_{j1 j2} = (-1)^{j1 + j2 - |j1 - j2|}`; the exponent is `2 min(j1, j2)`.
pub fn default_epsilon(j1: Weight, j2: Weight) -> i8 {
    parity(j1.twice().min(j2.twice()) as i64)
}

/// `epsilon_j = (-1)^{2j}`.
pub fn default_epsilon_diag(j: Weight) -> i8 {
    parity(j.twice() as i64)
}

/// Builds `[j1, j2]` on `(K^j1 (x) K^j2) (+) (K^j2 (x) K^j1)` in canonical bases.
pub fn build_rep(j1: Weight, j2: Weight, epsilon: Option<i8>) -> Result<CoupledRep> {
    if j1 == j2 {
        return Err(Error::EqualWeights { twice_j: j1.twice() });
    }
    let epsilon = check_epsilon(epsilon, default_epsilon(j1, j2))?;
    let (d1, d2) = (j1.dim(), j2.dim());
    let n = d1 * d2;
    let (r1, r2) = (su2_generators(j1), su2_generators(j2));
    let (id1, id2) = (ComplexMatrix::identity(d1), ComplexMatrix::identity(d2));

    let m = std::array::from_fn(|a| {
        r1.generators[a]
            .kron(&id2)
            .direct_sum(&r2.generators[a].kron(&id1))
    });
    let nn = std::array::from_fn(|a| {
        id1.kron(&r2.generators[a])
            .direct_sum(&id2.kron(&r1.generators[a]))
    });

    // pair |j1 l> (x) |j2 l'> in block 0 with |j2 l'> (x) |j1 l> in block 1
    let mut eta = ComplexMatrix::zeros(2 * n, 2 * n);
    let e = Complex64::new(f64::from(epsilon), 0.0);
    for a in 0..d1 {
        for b in 0..d2 {
            let left = a * d2 + b;
            let right = n + b * d1 + a;
            eta[(left, right)] = e;
            eta[(right, left)] = e;
        }
    }

    let mut labels = Vec::with_capacity(2 * n);
    for l1 in j1.twice_projections() {
        for l2 in j2.twice_projections() {
            labels.push(BasisLabel::Canonical {
                block: 0,
                twice_lambda: [l1, l2],
            });
        }
    }
    for l2 in j2.twice_projections() {
        for l1 in j1.twice_projections() {
            labels.push(BasisLabel::Canonical {
                block: 1,
                twice_lambda: [l2, l1],
            });
        }
    }
    CoupledRep::from_parts(j1, j2, m, nn, eta, epsilon, labels)
}

/// Builds `[j]` on `K^j (x) K^j` with the slot-swap metric.
pub fn build_rep_diag(j: Weight, epsilon: Option<i8>) -> Result<CoupledRep> {
    let epsilon = check_epsilon(epsilon, default_epsilon_diag(j))?;
    let d = j.dim();
    let r = su2_generators(j);
    let id = ComplexMatrix::identity(d);
    let m = std::array::from_fn(|a| r.generators[a].kron(&id));
    let n = std::array::from_fn(|a| id.kron(&r.generators[a]));

    let mut eta = ComplexMatrix::zeros(d * d, d * d);
    let e = Complex64::new(f64::from(epsilon), 0.0);
    for a in 0..d {
        for b in 0..d {
            eta[(a * d + b, b * d + a)] = e;
        }
    }
    let labels = j
        .twice_projections()
        .flat_map(|l1| {
            j.twice_projections().map(move |l2| BasisLabel::Canonical {
                block: 0,
                twice_lambda: [l1, l2],
            })
        })
        .collect();
    CoupledRep::from_parts(j, j, m, n, eta, epsilon, labels)
}

/// Builds `[j1, j2]` or `[j]` depending on whether the weights differ.
pub fn build_any(j1: Weight, j2: Weight, epsilon: Option<i8>) -> Result<CoupledRep> {
    if j1 == j2 {
        build_rep_diag(j1, epsilon)
    } else {
        build_rep(j1, j2, epsilon)
    }
}

/// [`build_any`] followed by the change to the requested basis.
pub fn build_in_basis(j1: Weight, j2: Weight, epsilon: Option<i8>, basis: BasisKind) -> Result<CoupledRep> {
    let rep = build_any(j1, j2, epsilon)?;
    match basis {
        BasisKind::Canonical => Ok(rep),
        BasisKind::Rotation => Ok(rotation_basis(&rep)?.1),
        BasisKind::Orthonormal => orthonormal_basis(&rotation_basis(&rep)?.1),
    }
}

/// Chiral projectors `P_L`, `P_R` onto the two tensor-order summands,
/// expressed in the rep's current basis.
pub fn chiral_projectors(rep: &CoupledRep) -> Result<(Projector, Projector)> {
    if rep.is_diagonal() {
        return Err(Error::WrongRepShape("chiral projectors need j1 != j2"));
    }
    let half = rep.dim / 2;
    let mut left = vec![0.0; rep.dim];
    left[..half].fill(1.0);
    let right: Vec<f64> = left.iter().map(|x| 1.0 - x).collect();

    let t = &rep.basis_change;
    let t_inv = numkernel::inverse(t, &Tolerances::default())?;
    let to_current = |d: &[f64]| &(&t_inv * &ComplexMatrix::from_real_diag(d)) * t;
    Ok((
        Projector::from_matrix(to_current(&left), 1e-10)?,
        Projector::from_matrix(to_current(&right), 1e-10)?,
    ))
}

fn check_canonical(rep: &CoupledRep) -> Result<()> {
    if rep.basis != BasisKind::Canonical {
        return Err(Error::WrongRepShape("expected a rep in the canonical basis"));
    }
    Ok(())
}

/// `s = j1 + j2, ..., |j1 - j2|` then `sigma = s, ..., -s`, as doubled values.
fn rotation_multiplets(j1: Weight, j2: Weight) -> Vec<(u32, i32)> {
    let (t1, t2) = (j1.twice(), j2.twice());
    let mut out = Vec::new();
    let mut ts = t1 + t2;
    loop {
        for k in 0..=ts {
            out.push((ts, ts as i32 - 2 * k as i32));
        }
        if ts < t1.abs_diff(t2) + 2 {
            break;
        }
        ts -= 2;
    }
    out
}

/// Columns `|(ja, jb) s, sigma> = sum <ja l; jb l' | s sigma> |l> (x) |l'>`
/// for one tensor block of dimension `da * db`.
fn rotation_block(ja: Weight, jb: Weight) -> Result<Vec<Vec<Complex64>>> {
    let db = jb.dim();
    let mut columns = Vec::new();
    for (ts, tsigma) in rotation_multiplets(ja, jb) {
        let mut col = vec![Complex64::new(0.0, 0.0); ja.dim() * db];
        for (a, la) in ja.twice_projections().enumerate() {
            let lb = tsigma - la;
            if lb.abs() > jb.twice() as i32 {
                continue;
            }
            let b = ((jb.twice() as i32 - lb) / 2) as usize;
            let cg = clebsch_gordan(ja, la, jb, lb, Weight::from_twice(ts), tsigma)?;
            col[a * db + b] = Complex64::new(cg.to_f64(), 0.0);
        }
        columns.push(col);
    }
    Ok(columns)
}

/// Clebsch-Gordan change to the rotation basis, where `I^2` and `I_3` are
/// diagonal. Returns the change matrix and the transformed rep.
pub fn rotation_basis(rep: &CoupledRep) -> Result<(ComplexMatrix, CoupledRep)> {
    check_canonical(rep)?;
    let (j1, j2) = (rep.j1, rep.j2);
    let mut labels = Vec::with_capacity(rep.dim);
    let c = if rep.is_diagonal() {
        labels.extend(
            rotation_multiplets(j1, j1)
                .into_iter()
                .map(|(twice_s, twice_sigma)| BasisLabel::Rotation {
                    block: 0,
                    twice_s,
                    twice_sigma,
                }),
        );
        ComplexMatrix::from_columns(&rotation_block(j1, j1)?)?
    } else {
        for block in 0..2u8 {
            let (a, b) = if block == 0 { (j1, j2) } else { (j2, j1) };
            labels.extend(
                rotation_multiplets(a, b)
                    .into_iter()
                    .map(|(twice_s, twice_sigma)| BasisLabel::Rotation {
                        block,
                        twice_s,
                        twice_sigma,
                    }),
            );
        }
        let c0 = ComplexMatrix::from_columns(&rotation_block(j1, j2)?)?;
        let c1 = ComplexMatrix::from_columns(&rotation_block(j2, j1)?)?;
        c0.direct_sum(&c1)
    };
    let rotated = rep.change_basis(&c, BasisKind::Rotation, labels)?;
    Ok((c, rotated))
}

/// `|(+-) s, sigma> = (|(j1, j2) s, sigma> +- |(j2, j1) s, sigma>) / sqrt 2`,
/// all `(+)` vectors first. The metric becomes diagonal with `+-1` entries.
pub fn orthonormal_basis(rep_rot: &CoupledRep) -> Result<CoupledRep> {
    if rep_rot.is_diagonal() {
        return Err(Error::WrongRepShape(
            "[j] reps are already orthonormal in the rotation basis",
        ));
    }
    if rep_rot.basis != BasisKind::Rotation {
        return Err(Error::WrongRepShape("expected a rep in the rotation basis"));
    }
    let half = rep_rot.dim / 2;
    let multiplets = rotation_multiplets(rep_rot.j1, rep_rot.j2);
    let mut b = ComplexMatrix::zeros(rep_rot.dim, rep_rot.dim);
    let mut labels = Vec::with_capacity(rep_rot.dim);
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    for (p, sign) in [(0usize, 1i8), (1, -1)] {
        for (idx, &(twice_s, twice_sigma)) in multiplets.iter().enumerate() {
            let col = p * half + idx;
            b[(idx, col)] = r;
            b[(half + idx, col)] = r * f64::from(sign);
            labels.push(BasisLabel::Orthonormal {
                parity: sign,
                twice_s,
                twice_sigma,
            });
        }
    }
    rep_rot.change_basis(&b, BasisKind::Orthonormal, labels)
}

/// Signature of the rep's metric.
pub fn rep_signature(rep: &CoupledRep, tol: &Tolerances) -> Result<Signature> {
    rep.metric.signature(tol)
}

/// Closed-form signature under the default `epsilon` choices: `(n, n)` with
/// `n = (2j1+1)(2j2+1)` for `j1 != j2`; for `[j]`, `((j+1)(2j+1), j(2j+1))`
/// at integer `j` and swapped at half-integer `j`.
pub fn expected_signature(j1: Weight, j2: Weight) -> Signature {
    if j1 != j2 {
        let n = j1.dim() * j2.dim();
        return Signature::new(n, n);
    }
    let d = j1.dim();
    let symmetric = d * (d + 1) / 2;
    let antisymmetric = d * (d - 1) / 2;
    if j1.is_integer() {
        Signature::new(symmetric, antisymmetric)
    } else {
        Signature::new(antisymmetric, symmetric)
    }
}

/// Rotation-basis metric assembled directly from its spectral form: for
/// `[j]`, `eps (-1)^{2j} sum (-1)^s |s,sigma><s,sigma|`; for `[j1, j2]`,
/// `eps (-1)^{s - j1 - j2}` pairing `|(j1,j2) s,sigma>` with `|(j2,j1) s,sigma>`.
/// Uses the ordering of [`rotation_basis`].
pub fn rotation_metric_spectral(j1: Weight, j2: Weight, epsilon: i8) -> ComplexMatrix {
    let multiplets = rotation_multiplets(j1, j2);
    let k = multiplets.len();
    let e = i64::from(epsilon);
    if j1 == j2 {
        let diag: Vec<f64> = multiplets
            .iter()
            .map(|&(ts, _)| (e * i64::from(parity(j1.twice() as i64)) * i64::from(parity(ts as i64 / 2))) as f64)
            .collect();
        return ComplexMatrix::from_real_diag(&diag);
    }
    let mut eta = ComplexMatrix::zeros(2 * k, 2 * k);
    for (idx, &(ts, _)) in multiplets.iter().enumerate() {
        let exponent = (ts as i64 - j1.twice() as i64 - j2.twice() as i64) / 2;
        let v = Complex64::new((e * i64::from(parity(exponent))) as f64, 0.0);
        eta[(idx, k + idx)] = v;
        eta[(k + idx, idx)] = v;
    }
    eta
}

/// Max deviation from `M_a^+ = eta N_a eta^-1` and `N_a^+ = eta M_a eta^-1`
/// over `a = 1, 2, 3`.
pub fn mnv_deviation(rep: &CoupledRep) -> f64 {
    let eta = rep.metric.eta();
    let eta_inv = rep.metric.eta_inv();
    let conj = |x: &ComplexMatrix| &(eta * x) * eta_inv;
    (0..3)
        .map(|a| {
            let d1 = rep.m[a].conj_transpose().max_abs_diff(&conj(&rep.n[a]));
            let d2 = rep.n[a].conj_transpose().max_abs_diff(&conj(&rep.m[a]));
            d1.max(d2)
        })
        .fold(0.0, f64::max)
}

/// Max deviation from `bar(I_a) = I_a` and `bar(K_a) = K_a`.
pub fn self_adjoint_deviation(rep: &CoupledRep) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for g in rep.i.iter().chain(&rep.k) {
        let op = KindedOperator::down_down(g.clone())?;
        worst = worst.max(opalg::semi_hermitian_deviation(&op, &rep.metric)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(twice: u32) -> Weight {
        Weight::from_twice(twice)
    }

    #[test]
    fn dimensions_and_defaults() {
        let r = build_rep(w(1), w(0), None).unwrap();
        assert_eq!(r.dim, 4);
        assert_eq!(r.epsilon, 1);
        assert_eq!(build_rep(w(3), w(1), None).unwrap().epsilon, -1);
        assert_eq!(build_rep_diag(w(1), None).unwrap().epsilon, -1);
        assert_eq!(build_rep_diag(w(2), None).unwrap().dim, 9);
        assert!(matches!(
            build_rep(w(2), w(2), None),
            Err(Error::EqualWeights { .. })
        ));
        assert!(build_rep(w(1), w(0), Some(2)).is_err());
    }

    #[test]
    fn dirac_rep_signature() {
        let r = build_rep(w(1), w(0), None).unwrap();
        let s = rep_signature(&r, &Tolerances::default()).unwrap();
        assert_eq!((s.n_plus, s.n_minus), (2, 2));
    }

    #[test]
    fn trivial_rep() {
        let r = build_rep_diag(Weight::ZERO, None).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(*r.metric.eta(), ComplexMatrix::identity(1));
        assert_eq!(
            rep_signature(&r, &Tolerances::default()).unwrap(),
            Signature::new(1, 0)
        );
    }

    #[test]
    fn diag_signatures_match_closed_form() {
        let tol = Tolerances::default();
        for (twice, expected) in [(1, (1, 3)), (2, (6, 3)), (3, (6, 10))] {
            let r = build_rep_diag(w(twice), None).unwrap();
            let s = rep_signature(&r, &tol).unwrap();
            assert_eq!((s.n_plus, s.n_minus), expected);
            assert_eq!(expected_signature(w(twice), w(twice)), s);
        }
    }

    #[test]
    fn chiral_projectors_rules() {
        let r = build_rep(w(1), w(0), None).unwrap();
        let (pl, pr) = chiral_projectors(&r).unwrap();
        assert_eq!((pl.rank(), pr.rank()), (2, 2));
        assert_eq!(pl.mat() + pr.mat(), ComplexMatrix::identity(4));
        let bar = opalg::dirac_adjoint(pl.op(), &r.metric).unwrap();
        assert!(bar.mat.approx_eq(pr.mat(), 1e-12));
        assert!(!opalg::is_semi_hermitian(pl.op(), &r.metric, 1e-10).unwrap());

        let d = build_rep_diag(w(1), None).unwrap();
        assert!(matches!(
            chiral_projectors(&d),
            Err(Error::WrongRepShape(_))
        ));
    }

    #[test]
    fn orthonormal_basis_of_dirac_rep() {
        let r = build_rep(w(1), w(0), None).unwrap();
        let (_, rot) = rotation_basis(&r).unwrap();
        let ortho = orthonormal_basis(&rot).unwrap();
        assert!(ortho.metric.eta().is_diagonal(1e-12));
        let diag: Vec<f64> = ortho.metric.eta().diagonal().iter().map(|z| z.re).collect();
        assert_eq!(diag.iter().filter(|&&x| (x - 1.0).abs() < 1e-12).count(), 2);
        assert_eq!(diag.iter().filter(|&&x| (x + 1.0).abs() < 1e-12).count(), 2);

        // chiral projectors survive the basis changes
        let (pl, pr) = chiral_projectors(&ortho).unwrap();
        assert!((pl.mat() + pr.mat()).approx_eq(&ComplexMatrix::identity(4), 1e-12));

        let d = build_rep_diag(w(1), None).unwrap();
        let (_, drot) = rotation_basis(&d).unwrap();
        assert!(matches!(
            orthonormal_basis(&drot),
            Err(Error::WrongRepShape(_))
        ));
        assert!(matches!(
            orthonormal_basis(&r),
            Err(Error::WrongRepShape(_))
        ));
    }

    #[test]
    fn rotation_basis_requires_canonical() {
        let r = build_rep(w(2), w(1), None).unwrap();
        let (_, rot) = rotation_basis(&r).unwrap();
        assert!(matches!(rotation_basis(&rot), Err(Error::WrongRepShape(_))));
    }

    #[test]
    fn multiplet_ordering() {
        assert_eq!(
            rotation_multiplets(w(1), w(1)),
            vec![(2, 2), (2, 0), (2, -2), (0, 0)]
        );
        assert_eq!(rotation_multiplets(w(2), w(0)).len(), 3);
        assert_eq!(rotation_multiplets(w(3), w(1)).len(), 8);
    }
}
