//! The operator pipeline shared by the MUM and conifold frames: build the
//! special basis as theta_z-operators, compare with the derivatives of
//! omega_1 in t0 and read off t0..t6.

use bcov_numeric::{int, LaurentSeries as L, Rational};
use num_traits::{One, Zero};

use crate::frobenius::PicardFuchs;
use crate::MirrorError;

/// Constants of the torus action fixed on the special locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub c: Rational,
    pub kappa: Rational,
    /// `-kappa^3 / (5^8 c^2)`; the Yukawa picks up this factor.
    pub mu: Rational,
}

pub const YUKAWA_PREFACTOR: i64 = 390625;

impl Normalization {
    pub fn new(c: Rational, kappa: Rational) -> Self {
        let mu = -(&kappa * &kappa * &kappa) / (int(YUKAWA_PREFACTOR) * &c * &c);
        Normalization { c, kappa, mu }
    }

    /// The kappa with mu = 1, so that the Yukawa constant term is the
    /// classical intersection number. Needs an exact rational cube root.
    pub fn from_policy(c: Rational) -> Result<Self, MirrorError> {
        let target = -(int(YUKAWA_PREFACTOR) * &c * &c);
        let k = rational_cbrt(&target).ok_or_else(|| MirrorError::Normalization(format!("no rational kappa for c = {c}")))?;
        Ok(Self::new(c, k))
    }

    fn row_scale(&self) -> [Rational; 4] {
        let k = &self.kappa;
        [Rational::one(), k.clone(), k * k / &self.mu, -(k * k * k) / &self.mu]
    }
}

fn rational_cbrt(r: &Rational) -> Option<Rational> {
    let root = |n: &num_bigint::BigInt| -> Option<num_bigint::BigInt> {
        let neg = n < &num_bigint::BigInt::zero();
        let a = if neg { -n.clone() } else { n.clone() };
        let c = a.cbrt();
        (&c * &c * &c == a).then(|| if neg { -c } else { c })
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// Local data of a frame around a boundary point in a coordinate x.
pub struct LocalFrame<'a> {
    pub z: L,
    /// The regular period normalizing omega_1.
    pub y0: L,
    /// Flat derivative `D = v * theta_z`.
    pub v: L,
    pub theta_z: &'a dyn Fn(&L) -> L,
    /// Yukawa in z, `C(z)`.
    pub c_z: L,
}

pub type Mat4 = [[L; 4]; 4];

#[derive(Clone, Debug)]
pub struct BasisChange {
    /// Rows of the special basis as operators in theta_z.
    pub m: Mat4,
    /// `T = scale * (M W^-1)`, the matrix of the basis change.
    pub tmat: Mat4,
    pub t: [L; 7],
    /// Normalized Yukawa `K = C v^3 / y0^2`.
    pub k: L,
    /// `mu K`, the Yukawa seen by the algebraic fields.
    pub yukawa: L,
}

fn zero_like(x: &L) -> L {
    L::zero_to(x.precision().max(x.valuation()) + 64)
}

fn flat_derivative(f: &LocalFrame, p: &[L; 4], op: &[L; 4]) -> [L; 4] {
    let mut r: Vec<L> = op.iter().map(|x| (f.theta_z)(x)).collect();
    for k in 0..3 {
        r[k + 1] = r[k + 1].add(&op[k]);
    }
    for j in 0..4 {
        r[j] = r[j].add(&op[3].mul(&p[j]));
    }
    std::array::from_fn(|j| r[j].mul(&f.v))
}

/// Coefficients of `d^k/dt0^k (1/t0)` in `t0^(-k-1) theta^j`, for the
/// dependence `z = t4 / (s t0^e)`.
pub fn t0_derivative_table(e: u32) -> [[Rational; 4]; 4] {
    let mut out: [[Rational; 4]; 4] = Default::default();
    let mut row = [Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = row.clone();
        let m = int(k as i64 + 1);
        let mut next: [Rational; 4] = Default::default();
        for j in 0..4 {
            next[j] = -(&m * &row[j]);
            if j > 0 {
                next[j] -= int(e as i64) * &row[j - 1];
            }
        }
        row = next;
    }
    out
}

pub fn run(pf: &PicardFuchs, f: &LocalFrame, n: &Normalization, z_scale: i64, e: u32) -> Result<BasisChange, MirrorError> {
    let p = pf.reduction(&f.z);
    let y0_inv = f.y0.inverse().map_err(MirrorError::series("y0"))?;
    let y0_sq_inv = y0_inv.mul(&y0_inv);
    let k = f.c_z.mul(&f.v.pow(3)).mul(&y0_sq_inv);
    let k_inv = k.inverse().map_err(MirrorError::series("Yukawa"))?;
    let z0 = zero_like(&f.y0);
    let r1: [L; 4] = [y0_inv.clone(), z0.clone(), z0.clone(), z0.clone()];
    let r2 = flat_derivative(f, &p, &r1);
    let r3 = flat_derivative(f, &p, &r2).map(|x| x.mul(&k_inv));
    let r4 = flat_derivative(f, &p, &r3);
    let m: Mat4 = [r1, r2, r3, r4];

    // W[k][j]: d^k/dt0^k of the omega_1 periods y / t0 with t0 = y0.
    let table = t0_derivative_table(e);
    let mut w: Vec<Vec<L>> = Vec::new();
    let mut y0_pow_inv = y0_inv.clone();
    for row in &table {
        w.push(row.iter().map(|c| y0_pow_inv.scale(c)).collect());
        y0_pow_inv = y0_pow_inv.mul(&y0_inv);
    }
    let winv = lower_inverse(&w)?;
    let scale = n.row_scale();
    let mut tmat: Mat4 = std::array::from_fn(|_| std::array::from_fn(|_| z0.clone()));
    let mut cj = Rational::one();
    for j in 0..4 {
        for i in 0..4 {
            let mut s = z0.clone();
            for kk in 0..4 {
                if !m[i][kk].is_zero() && !winv[kk][j].is_zero() {
                    s = s.add(&m[i][kk].mul(&winv[kk][j]));
                }
            }
            tmat[i][j] = s.scale(&(&scale[i] * &cj));
        }
        cj *= &n.c;
    }
    let t0 = f.y0.scale(&n.c);
    let c_e = (0..e).fold(Rational::one(), |a, _| a * &n.c);
    let t4 = f.z.mul(&f.y0.pow(e)).scale(&(int(z_scale) * c_e));
    let t = [
        t0,
        tmat[3][0].clone(),
        tmat[3][1].clone(),
        tmat[3][2].clone(),
        t4,
        tmat[2][2].clone(),
        tmat[2][1].clone(),
    ];
    let yukawa = k.scale(&n.mu);
    Ok(BasisChange { m, tmat, t, k, yukawa })
}

fn lower_inverse(w: &[Vec<L>]) -> Result<Vec<Vec<L>>, MirrorError> {
    let n = w.len();
    let z0 = zero_like(&w[0][0]);
    let mut x = vec![vec![z0.clone(); n]; n];
    for i in 0..n {
        let d = w[i][i].inverse().map_err(MirrorError::series("W diagonal"))?;
        x[i][i] = d.clone();
        for j in (0..i).rev() {
            let mut s = z0.clone();
            for k in j..i {
                if !w[i][k].is_zero() && !x[k][j].is_zero() {
                    s = s.add(&w[i][k].mul(&x[k][j]));
                }
            }
            x[i][j] = s.mul(&d).neg();
        }
    }
    Ok(x)
}
