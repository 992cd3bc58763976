use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use bcov_fields::{field, FieldLabel, VectorFieldOT};
use bcov_numeric::sparse::{solve_fraction_free, solve_multimodular, ElimStats, SparseSystem};
use bcov_numeric::{int, Rational};
use bcov_polyring::{enumerate_monomials, Monomial, OTElement, WeightedPoly};
use num_traits::Zero;

use crate::form::{LinearForm, ParamId};
use crate::genus1::LogAmplitude;
use crate::AnomalyError;

/// Base of the pole factor `base^(2g-2) t5^(3g-3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DenominatorBase {
    /// `t4 - t0^5`.
    #[default]
    Disc,
    /// `t4 - t0`.
    Printed,
}

impl DenominatorBase {
    fn poly(self) -> WeightedPoly {
        match self {
            DenominatorBase::Disc => WeightedPoly::disc(),
            DenominatorBase::Printed => WeightedPoly::parse("t4 - t0").unwrap(),
        }
    }
}

/// `F_g = Q / (disc^(2g-2) t5^(3g-3))` with Q linear in ambiguity parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusAmplitude {
    pub g: u32,
    /// Q split by parameter; `None` is the parameter-free part.
    pub numerator: BTreeMap<Option<ParamId>, WeightedPoly>,
    /// Parameters introduced at this genus with their kernel monomials.
    pub ambiguity: Vec<(ParamId, Monomial)>,
}

impl GenusAmplitude {
    pub fn den_exps(&self) -> (u32, u32, u32) {
        (3 * self.g - 3, 0, 2 * self.g - 2)
    }

    pub fn q(&self) -> &WeightedPoly {
        &self.numerator[&None]
    }

    pub fn form(&self) -> LinearForm {
        let (a, b, c) = self.den_exps();
        let mut f = LinearForm::zero();
        for (p, q) in &self.numerator {
            let e = OTElement::new(q.clone(), a, b, c);
            match p {
                None => f.constant = e,
                Some(id) => {
                    if !e.is_zero() {
                        f.params.insert(*id, e);
                    }
                }
            }
        }
        f
    }

    pub fn params(&self) -> Vec<ParamId> {
        self.numerator.keys().flatten().copied().collect()
    }

    /// Substitutes values for some parameters.
    pub fn substitute(&self, values: &HashMap<ParamId, Rational>) -> GenusAmplitude {
        let mut out = BTreeMap::new();
        let mut base = self.numerator.get(&None).cloned().unwrap_or_else(WeightedPoly::zero);
        for (p, q) in &self.numerator {
            if let Some(id) = p {
                match values.get(id) {
                    Some(v) => base = base.add(&q.scale(v)),
                    None => {
                        out.insert(*p, q.clone());
                    }
                }
            }
        }
        out.insert(None, base);
        GenusAmplitude {
            g: self.g,
            numerator: out,
            ambiguity: self.ambiguity.iter().filter(|(p, _)| !values.contains_key(p)).cloned().collect(),
        }
    }

    /// Monomials of the parameter-free part violating `i2+...+i6 >= 3g-3`.
    pub fn support_violations(&self) -> Vec<Monomial> {
        let need = 3 * self.g - 3;
        self.q().terms().map(|(m, _)| *m).filter(|m| m.support_index() < need).collect()
    }
}

/// Lower-genus amplitudes feeding the recursion.
#[derive(Clone, Debug)]
pub enum Amplitude {
    Genus1(LogAmplitude),
    Higher(GenusAmplitude),
}

impl Amplitude {
    pub fn genus(&self) -> u32 {
        match self {
            Amplitude::Genus1(_) => 1,
            Amplitude::Higher(a) => a.g,
        }
    }

    pub fn derivative(&self, x: &VectorFieldOT) -> LinearForm {
        match self {
            Amplitude::Genus1(f) => LinearForm::constant(f.apply(x)),
            Amplitude::Higher(a) => a.form().apply(x),
        }
    }
}

/// `1/2 sum_{h=1}^{g-1} R_1F_h R_1F_{g-h} + 1/2 R_1 R_1 F_{g-1}`.
pub fn rhs_genus(g: u32, amps: &[Amplitude]) -> Result<LinearForm, AnomalyError> {
    assert!(g >= 2 && amps.len() as u32 >= g - 1);
    let r1 = field(FieldLabel::R1);
    let d: Vec<LinearForm> = amps[..(g - 1) as usize].iter().map(|a| a.derivative(&r1)).collect();
    let mut acc = LinearForm::zero();
    for h in 1..g {
        acc = acc.add(&d[(h - 1) as usize].mul(&d[(g - h - 1) as usize])?);
    }
    acc = acc.add(&d[(g - 2) as usize].apply(&r1));
    Ok(acc.scale(&bcov_numeric::rat(1, 2)))
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub base: DenominatorBase,
    /// Run the multi-modular solve and compare.
    pub cross_check: bool,
}

#[derive(Clone, Debug)]
pub struct GenusSolution {
    pub amplitude: GenusAmplitude,
    pub stats: ElimStats,
    pub unknowns: usize,
    pub kernel_matches_prediction: bool,
    pub kernel_monomials: Vec<Monomial>,
    pub support_ok: bool,
    pub residual_zero: bool,
    /// `None` unless requested.
    pub cross_check: Option<bool>,
    pub millis: u128,
}

/// Monomials `t0^a t4^b t5^(3g-3)` with `a + 5b = 12(g-1)`, in basis order.
pub fn predicted_kernel(g: u32) -> Vec<Monomial> {
    let n = 12 * (g as u16 - 1);
    let mut v: Vec<Monomial> = (0..=n / 5)
        .map(|b| {
            let mut e = [0u16; 7];
            e[0] = n - 5 * b;
            e[4] = b;
            e[5] = 3 * (g as u16 - 1);
            Monomial::from_exps(e)
        })
        .collect();
    v.sort();
    v
}

/// Imposes `R_t11 F = rhs`, `R_k1 F = 0`, `R_g11 F = 0` on the graded ansatz.
pub fn solve_genus(g: u32, rhs: &LinearForm, opts: &SolveOptions) -> Result<GenusSolution, AnomalyError> {
    let start = Instant::now();
    let basis: Vec<Monomial> = enumerate_monomials(21 * (g as i64 - 1), 3 * (g as i64 - 1));
    let n = basis.len();
    let k5 = 3 * g - 3;
    let base = opts.base.poly().pow(2 * g - 2);
    // None of the three fields differentiates t0 or t4, so the base factor
    // moves to the right-hand side: X(Q / t5^k) = base * target.
    let rhs_cols: Vec<(Option<ParamId>, OTElement)> = std::iter::once((None, rhs.constant.clone()))
        .chain(rhs.params.iter().map(|(p, v)| (Some(*p), v.clone())))
        .map(|(p, v)| (p, v.mul_poly(&base)))
        .collect();
    let nrhs = rhs_cols.len();
    let constraints: Vec<(VectorFieldOT, bool)> =
        vec![(field(FieldLabel::Rt11), true), (field(FieldLabel::Rk1), false), (field(FieldLabel::Rg11), false)];
    let mut sys = SparseSystem::new(n, nrhs);
    for (x, with_rhs) in &constraints {
        let imgs: Vec<OTElement> =
            basis.iter().map(|m| bcov_fields::apply(x, &OTElement::new(WeightedPoly::term(int(1), *m), k5, 0, 0))).collect();
        let mut den = (0, 0, 0);
        let all_rhs: Vec<&OTElement> = if *with_rhs { rhs_cols.iter().map(|x| &x.1).collect() } else { vec![] };
        for e in imgs.iter().chain(all_rhs.iter().copied()) {
            let (a, b, c) = e.den_exps();
            den = (den.0.max(a), den.1.max(b), den.2.max(c));
        }
        let mut rows: BTreeMap<Monomial, (Vec<(usize, Rational)>, Vec<Rational>)> = BTreeMap::new();
        for (col, e) in imgs.iter().enumerate() {
            for (m, v) in e.numerator_over(den.0, den.1, den.2).terms() {
                rows.entry(*m).or_insert_with(|| (vec![], vec![Rational::zero(); nrhs])).0.push((col, v.clone()));
            }
        }
        for (k, e) in all_rhs.iter().enumerate() {
            for (m, v) in e.numerator_over(den.0, den.1, den.2).terms() {
                rows.entry(*m).or_insert_with(|| (vec![], vec![Rational::zero(); nrhs])).1[k] = v.clone();
            }
        }
        for (_, (e, b)) in rows {
            sys.push_row(e, b);
        }
    }
    let (sol, stats) = solve_fraction_free(&sys);
    if let Some(o) = sol.obstructions.iter().find(|o| !o.iter().all(Zero::is_zero)) {
        let which: Vec<String> = rhs_cols
            .iter()
            .zip(o)
            .filter(|(_, v)| !v.is_zero())
            .map(|((p, _), _)| p.map_or("constant".to_string(), |p| p.to_string()))
            .collect();
        return Err(AnomalyError::Inconsistent { genus: g, columns: which, obstructions: sol.obstructions.len() });
    }
    let canon = sol.canonical();
    let cross_check = if opts.cross_check {
        Some(solve_multimodular(&sys, 96).is_some_and(|m| m.canonical == canon))
    } else {
        None
    };
    let predicted = predicted_kernel(g);
    let kernel_monomials: Vec<Monomial> = canon
        .kernel
        .iter()
        .filter_map(|v| {
            let nz: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
            (nz.len() == 1).then(|| basis[nz[0]])
        })
        .collect();
    let mut km_sorted = kernel_monomials.clone();
    km_sorted.sort();
    let kernel_matches_prediction = canon.kernel.len() == predicted.len() && km_sorted == predicted;
    let to_poly = |x: &[Rational]| WeightedPoly::from_terms(basis.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, c.clone())));
    let mut numerator = BTreeMap::new();
    for ((p, _), x) in rhs_cols.iter().zip(&canon.particular) {
        numerator.insert(*p, to_poly(x));
    }
    let mut ambiguity = Vec::new();
    for (i, v) in canon.kernel.iter().enumerate() {
        let id = ParamId { genus: g, index: i };
        let q = to_poly(v);
        let mono = q.terms().next().map(|(m, _)| *m).unwrap_or_else(Monomial::one);
        numerator.insert(Some(id), q);
        ambiguity.push((id, mono));
    }
    let amplitude = GenusAmplitude { g, numerator, ambiguity };
    let residual_zero = if opts.base == DenominatorBase::Disc {
        constraint_residual(&amplitude, rhs).iter().all(LinearForm::is_zero)
    } else {
        (0..nrhs).all(|k| sys.residual(&canon.particular[k], k).is_empty())
    };
    let support_ok = amplitude.support_violations().is_empty();
    Ok(GenusSolution {
        amplitude,
        stats,
        unknowns: n,
        kernel_matches_prediction,
        kernel_monomials,
        support_ok,
        residual_zero,
        cross_check,
        millis: start.elapsed().as_millis(),
    })
}

/// `R_t11 F - rhs`, `R_k1 F`, `R_g11 F`, `R_g0 F - (2g-2) F`, applied to the
/// assembled amplitude.
pub fn constraint_residual(a: &GenusAmplitude, rhs: &LinearForm) -> Vec<LinearForm> {
    let f = a.form();
    let w = int(2 * a.g as i64 - 2);
    vec![
        f.apply(&field(FieldLabel::Rt11)).sub(rhs),
        f.apply(&field(FieldLabel::Rk1)),
        f.apply(&field(FieldLabel::Rg11)),
        f.apply(&field(FieldLabel::Rg0)).sub(&f.scale(&w)),
    ]
}

/// Solves genus 2..=max_genus in turn, carrying unfixed parameters.
pub fn solve_chain(f1: &LogAmplitude, max_genus: u32, opts: &SolveOptions) -> Result<Vec<GenusSolution>, AnomalyError> {
    let mut amps = vec![Amplitude::Genus1(f1.clone())];
    let mut out = Vec::new();
    for g in 2..=max_genus {
        let rhs = rhs_genus(g, &amps)?;
        let s = solve_genus(g, &rhs, opts)?;
        amps.push(Amplitude::Higher(s.amplitude.clone()));
        out.push(s);
    }
    Ok(out)
}
