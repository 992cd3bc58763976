use bcov_fields::{apply, canonical_fields, FieldLabel, VectorFieldOT};
use bcov_numeric::{int, rat, Rational};
use bcov_polyring::OTElement;
use num_traits::Zero;

/// `F_1 = -ln(t4^e4 * disc^edisc * t5^e5)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogAmplitude {
    pub e4: Rational,
    pub edisc: Rational,
    pub e5: Rational,
}

/// Factor between the printed exponents and those satisfying the genus-one
/// anomaly equations with the stated constants.
pub const F1_NORMALIZATION: i64 = 5;

impl LogAmplitude {
    pub fn new(e4: Rational, edisc: Rational, e5: Rational) -> Self {
        LogAmplitude { e4, edisc, e5 }
    }

    /// Exponents (5/12, -1/12, 1/10).
    pub fn printed() -> Self {
        Self::new(rat(5, 12), rat(-1, 12), rat(1, 10))
    }

    /// Printed exponents times [`F1_NORMALIZATION`].
    pub fn normalized() -> Self {
        Self::printed().scaled(&int(F1_NORMALIZATION))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::new(&self.e4 * c, &self.edisc * c, &self.e5 * c)
    }

    /// `X(F_1)`, an element of O_T.
    pub fn apply(&self, x: &VectorFieldOT) -> OTElement {
        let mut acc = OTElement::zero();
        for (e, f) in [(&self.e4, OTElement::var(4)), (&self.edisc, OTElement::disc()), (&self.e5, OTElement::var(5))] {
            if e.is_zero() {
                continue;
            }
            let xf = apply(x, &f);
            if xf.is_zero() {
                continue;
            }
            let q = xf.div(&f).expect("t4, t5 and disc are units");
            acc = acc.add(&q.scale(e));
        }
        acc.neg()
    }
}

impl Default for LogAmplitude {
    fn default() -> Self {
        Self::printed()
    }
}

/// R_1 of t4 and of disc are divisible by t4 and disc, so R_1 F_1 has only
/// t5 in its denominator.
pub fn r1_f1_is_regular(f1: &LogAmplitude) -> bool {
    let r1 = bcov_fields::field(FieldLabel::R1);
    let n4 = apply(&r1, &OTElement::var(4));
    let nd = apply(&r1, &OTElement::disc());
    let div4 = n4.numerator().div_var(4).is_some();
    let divd = nd.numerator().div_disc().is_some();
    let (_, b, c) = f1.apply(&r1).den_exps();
    div4 && divd && b == 0 && c == 0
}

#[derive(Clone, Debug)]
pub struct F1Check {
    pub label: FieldLabel,
    pub value: OTElement,
    /// Value required by the genus-one equations.
    pub claimed: Rational,
}

impl F1Check {
    pub fn passed(&self) -> bool {
        self.value.as_constant().as_ref() == Some(&self.claimed)
    }
}

/// Applies the six Lie(G) fields to F_1 and compares with the genus-one
/// equations `R_g0 F1 = -(3 + chi_b/12)/2`, `R_g11 F1 = -1/2`, others 0.
pub fn f1_checks(f1: &LogAmplitude, chi_b: &Rational) -> Vec<F1Check> {
    canonical_fields()
        .iter()
        .filter(|x| x.label != Some(FieldLabel::R1))
        .map(|x| {
            let label = x.label.unwrap();
            let claimed = match label {
                FieldLabel::Rg0 => -(int(3) + chi_b / int(12)) / int(2),
                FieldLabel::Rg11 => rat(-1, 2),
                _ => Rational::zero(),
            };
            F1Check { label, value: f1.apply(x), claimed }
        })
        .collect()
}
