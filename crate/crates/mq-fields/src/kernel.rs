use bcov_numeric::sparse::{solve_fraction_free, SparseSystem};
use bcov_polyring::{enumerate_monomials, Monomial, OTElement, WeightedPoly};
use std::collections::HashMap;

use num_traits::Zero;

use crate::fields::{apply, VectorFieldOT};

#[derive(Clone, Debug)]
pub struct KernelLevel {
    pub e0: i64,
    pub monomials: usize,
    pub kernel_dim: usize,
    /// Number of monomials t0^a t4^b of this degree.
    pub expected_dim: usize,
    /// Every kernel vector is supported on t0, t4 monomials.
    pub supported_on_t0_t4: bool,
}

impl KernelLevel {
    pub fn passed(&self) -> bool {
        self.kernel_dim == self.expected_dim && self.supported_on_t0_t4
    }
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub max_e0: i64,
    pub total_monomials: usize,
    pub levels: Vec<KernelLevel>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(KernelLevel::passed)
    }

    pub fn kernel_dim(&self) -> usize {
        self.levels.iter().map(|l| l.kernel_dim).sum()
    }
}

fn only_t0_t4(m: &Monomial) -> bool {
    let e = m.exps();
    e[1] == 0 && e[2] == 0 && e[3] == 0 && e[5] == 0 && e[6] == 0
}

/// Joint kernel of the given fields on polynomials of each e0-degree up to
/// `max_e0`. The fields preserve e0-degree up to a shift, so levels decouple.
pub fn joint_kernel(fields: &[VectorFieldOT], max_e0: i64) -> KernelReport {
    let mut levels = Vec::new();
    let mut total = 0;
    for d in 0..=max_e0 {
        let monos: Vec<Monomial> = (0..=d).flat_map(|e1| enumerate_monomials(d, e1)).collect();
        total += monos.len();
        let mut sys = SparseSystem::new(monos.len(), 0);
        for x in fields {
            let imgs: Vec<OTElement> = monos.iter().map(|m| apply(x, &OTElement::from_poly(WeightedPoly::term(bcov_numeric::int(1), *m)))).collect();
            let (mut a, mut b, mut c) = (0, 0, 0);
            for e in &imgs {
                let (x5, x4, xd) = e.den_exps();
                a = a.max(x5);
                b = b.max(x4);
                c = c.max(xd);
            }
            let mut rows: HashMap<Monomial, Vec<(usize, bcov_numeric::Rational)>> = HashMap::new();
            for (col, e) in imgs.iter().enumerate() {
                for (m, v) in e.numerator_over(a, b, c).terms() {
                    rows.entry(*m).or_default().push((col, v.clone()));
                }
            }
            let mut keys: Vec<Monomial> = rows.keys().copied().collect();
            keys.sort();
            for k in keys {
                sys.push_row(rows.remove(&k).unwrap(), vec![]);
            }
        }
        let (sol, _) = solve_fraction_free(&sys);
        let supported = sol.kernel.iter().all(|v| v.iter().zip(&monos).all(|(x, m)| x.is_zero() || only_t0_t4(m)));
        let expected_dim = monos.iter().filter(|m| only_t0_t4(m)).count();
        levels.push(KernelLevel {
            e0: d,
            monomials: monos.len(),
            kernel_dim: sol.kernel.len(),
            expected_dim,
            supported_on_t0_t4: supported,
        });
    }
    KernelReport { max_e0, total_monomials: total, levels }
}

/// The kernel test with R_g11, R_t11, R_t1, R_t, R_k1.
pub fn joint_kernel_test(max_e0: i64) -> KernelReport {
    use crate::fields::{field, FieldLabel::*};
    let fs: Vec<VectorFieldOT> = [Rg11, Rt11, Rt1, Rt, Rk1].into_iter().map(field).collect();
    joint_kernel(&fs, max_e0)
}
