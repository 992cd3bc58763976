use bcov_fields::{field, FieldLabel};
use bcov_numeric::{int, Rational};
use bcov_polyring::OTElement;

use crate::form::LinearForm;
use crate::genus1::LogAmplitude;
use crate::solver::{rhs_genus, Amplitude, GenusAmplitude};
use crate::AnomalyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasterEquation {
    Rg0,
    Rg11,
    Rt11,
    Rk1,
    Rt1,
    Rt,
}

impl MasterEquation {
    pub const ALL: [MasterEquation; 6] = [Self::Rg0, Self::Rg11, Self::Rt11, Self::Rk1, Self::Rt1, Self::Rt];

    pub fn label(self) -> FieldLabel {
        match self {
            Self::Rg0 => FieldLabel::Rg0,
            Self::Rg11 => FieldLabel::Rg11,
            Self::Rt11 => FieldLabel::Rt11,
            Self::Rk1 => FieldLabel::Rk1,
            Self::Rt1 => FieldLabel::Rt1,
            Self::Rt => FieldLabel::Rt,
        }
    }

    /// Whether the solver imposes this equation (the rest are consequences).
    pub fn imposed(self) -> bool {
        matches!(self, Self::Rg11 | Self::Rt11 | Self::Rk1)
    }
}

#[derive(Clone, Debug)]
pub struct MasterEntry {
    pub genus: u32,
    pub equation: MasterEquation,
    /// `lhs - rhs` as a form in the remaining parameters.
    pub residual: LinearForm,
}

impl MasterEntry {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

struct Tower<'a> {
    f1: &'a LogAmplitude,
    higher: &'a [GenusAmplitude],
}

impl Tower<'_> {
    fn amps(&self) -> Vec<Amplitude> {
        std::iter::once(Amplitude::Genus1(self.f1.clone()))
            .chain(self.higher.iter().cloned().map(Amplitude::Higher))
            .collect()
    }

    /// `(2k-2) F_k`; zero at k = 1, where F_1 is logarithmic.
    fn weighted(&self, k: u32) -> LinearForm {
        if k == 1 {
            LinearForm::zero()
        } else {
            self.higher[(k - 2) as usize].form().scale(&int(2 * k as i64 - 2))
        }
    }

    fn r1(&self, k: u32) -> LinearForm {
        let r1 = field(FieldLabel::R1);
        if k == 1 {
            LinearForm::constant(self.f1.apply(&r1))
        } else {
            self.higher[(k - 2) as usize].form().apply(&r1)
        }
    }
}

/// Checks the six equations for every genus from 1 to `1 + higher.len()`.
/// `higher[i]` is F_{i+2}; `chi_b` is the B-side Euler characteristic.
pub fn verify_master(
    f1: &LogAmplitude,
    higher: &[GenusAmplitude],
    chi_b: &Rational,
) -> Result<Vec<MasterEntry>, AnomalyError> {
    let tw = Tower { f1, higher };
    let a = -chi_b / int(24);
    let half = bcov_numeric::rat(1, 2);
    let c = |r: Rational| LinearForm::constant(OTElement::constant(r));
    let mut out = Vec::new();
    for eq in MasterEquation::ALL {
        let x = field(eq.label());
        let lhs = LinearForm::constant(f1.apply(&x));
        let rhs = match eq {
            MasterEquation::Rg0 => c(int(-3) / int(2) - chi_b / int(24)),
            MasterEquation::Rg11 => c(-half.clone()),
            _ => LinearForm::zero(),
        };
        out.push(MasterEntry { genus: 1, equation: eq, residual: lhs.sub(&rhs) });
    }
    let amps = tw.amps();
    for g in 2..=(1 + higher.len() as u32) {
        let f = higher[(g - 2) as usize].form();
        let m = g - 1;
        for eq in MasterEquation::ALL {
            let lhs = f.apply(&field(eq.label()));
            let rhs = match eq {
                MasterEquation::Rg0 => f.scale(&int(2 * g as i64 - 2)),
                MasterEquation::Rg11 | MasterEquation::Rk1 => LinearForm::zero(),
                MasterEquation::Rt11 => rhs_genus(g, &amps)?,
                MasterEquation::Rt1 => {
                    let mut acc = tw.r1(m).scale(&(a.clone() + int(2 * g as i64 - 4)));
                    for h in 1..g {
                        acc = acc.add(&tw.r1(h).mul(&tw.weighted(g - h))?);
                    }
                    acc
                }
                MasterEquation::Rt => {
                    let mut acc = if g == 2 { c(&a * (&a - int(1))) } else { LinearForm::zero() };
                    let wm = tw.weighted(m);
                    acc = acc.add(&wm.scale(&(&a * int(2) - int(1))));
                    acc = acc.add(&wm.scale(&int(2 * m as i64 - 2)));
                    for h in 1..=m {
                        acc = acc.add(&tw.weighted(h).mul(&tw.weighted(m + 1 - h))?);
                    }
                    acc.scale(&half)
                }
            };
            out.push(MasterEntry { genus: g, equation: eq, residual: lhs.sub(&rhs) });
        }
    }
    Ok(out)
}
