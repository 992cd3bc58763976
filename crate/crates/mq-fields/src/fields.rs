use std::fmt;

use bcov_numeric::{int, rat, Rational};
use bcov_polyring::{Degree, Grading, OTElement, WeightedPoly, NVARS};

/// Labels of the seven fields, in frame order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldLabel {
    R1,
    Rg0,
    Rg11,
    Rk1,
    Rt11,
    Rt1,
    Rt,
}

impl FieldLabel {
    pub const ALL: [FieldLabel; 7] =
        [FieldLabel::R1, FieldLabel::Rg0, FieldLabel::Rg11, FieldLabel::Rk1, FieldLabel::Rt11, FieldLabel::Rt1, FieldLabel::Rt];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldLabel::R1 => "R_1",
            FieldLabel::Rg0 => "R_g0",
            FieldLabel::Rg11 => "R_g11",
            FieldLabel::Rk1 => "R_k1",
            FieldLabel::Rt11 => "R_t11",
            FieldLabel::Rt1 => "R_t1",
            FieldLabel::Rt => "R_t",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        FieldLabel::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s) || l.name().replace('_', "").eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A derivation of O_T: `sum_i components[i] d/dt_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorFieldOT {
    pub components: [OTElement; NVARS],
    pub label: Option<FieldLabel>,
}

impl VectorFieldOT {
    pub fn new(components: [OTElement; NVARS]) -> Self {
        VectorFieldOT { components, label: None }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| OTElement::zero()))
    }

    pub fn partial(i: usize) -> Self {
        let mut v = Self::zero();
        v.components[i] = OTElement::one();
        v
    }

    fn labelled(mut self, l: FieldLabel) -> Self {
        self.label = Some(l);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(OTElement::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(std::array::from_fn(|i| self.components[i].add(&o.components[i])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(std::array::from_fn(|i| self.components[i].sub(&o.components[i])))
    }

    pub fn neg(&self) -> Self {
        Self::new(std::array::from_fn(|i| self.components[i].neg()))
    }

    /// Multiplication by a function.
    pub fn mul_fn(&self, f: &OTElement) -> Self {
        Self::new(std::array::from_fn(|i| self.components[i].mul(f)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(std::array::from_fn(|i| self.components[i].scale(c)))
    }

    /// The e0-weight of the field if `deg(X_i) - e0(t_i)` is the same for
    /// every nonzero component.
    pub fn pure_weight(&self) -> Option<i64> {
        let w = Grading::E0.weights();
        let mut out = None;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Degree::Homogeneous(d) = c.grading(Grading::E0) else { return None };
            let k = d - w[i];
            match out {
                None => out = Some(k),
                Some(o) if o != k => return None,
                _ => {}
            }
        }
        out.or(Some(0))
    }
}

impl fmt::Display for VectorFieldOT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.components.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("[{c}] d/dt{i}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorFieldOT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.label {
            write!(f, "{l}: ")?;
        }
        fmt::Display::fmt(self, f)
    }
}

/// `sum_i X_i df/dt_i`.
pub fn apply(x: &VectorFieldOT, f: &OTElement) -> OTElement {
    let mut acc = OTElement::zero();
    for (i, c) in x.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = f.partial(i);
        if !d.is_zero() {
            acc = acc.add(&c.mul(&d));
        }
    }
    acc
}

pub fn vf_bracket(x: &VectorFieldOT, y: &VectorFieldOT) -> VectorFieldOT {
    VectorFieldOT::new(std::array::from_fn(|i| apply(x, &y.components[i]).sub(&apply(y, &x.components[i]))))
}

fn poly(s: &str) -> WeightedPoly {
    WeightedPoly::parse(s).expect("static polynomial")
}

fn over_t5(s: &str) -> OTElement {
    OTElement::new(poly(s), 1, 0, 0)
}

/// Sign choice for the two fields whose printed form differs from the
/// canonical one by an overall sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldVariant {
    #[default]
    Canonical,
    Printed,
}

pub fn r1() -> VectorFieldOT {
    VectorFieldOT::new([
        over_t5("3750*t0^5 + t0*t3 - 625*t4"),
        over_t5("-390625*t0^6 + 3125*t0^4*t1 + 390625*t0*t4 + t1*t3"),
        over_t5("-5859375*t0^7 - 625*t0^5*t1 + 6250*t0^4*t2 + 5859375*t0^2*t4 + 625*t1*t4 + 2*t2*t3"),
        over_t5("-9765625*t0^8 - 625*t0^5*t2 + 9375*t0^4*t3 + 9765625*t0^3*t4 + 625*t2*t4 + 3*t3^2"),
        over_t5("15625*t0^4*t4 + 5*t3*t4"),
        over_t5("-625*t0^5*t6 + 9375*t0^4*t5 + 2*t3*t5 + 625*t4*t6"),
        over_t5("9375*t0^4*t6 - 3125*t0^3*t5 - 2*t2*t5 + 3*t3*t6"),
    ])
    .labelled(FieldLabel::R1)
}

/// Weighted Euler field.
pub fn rg0() -> VectorFieldOT {
    let w = [1, 2, 3, 4, 5, 3, 2];
    VectorFieldOT::new(std::array::from_fn(|i| OTElement::var(i).scale(&int(w[i])))).labelled(FieldLabel::Rg0)
}

pub fn rg11() -> VectorFieldOT {
    let mut v = VectorFieldOT::zero();
    v.components[5] = OTElement::var(5);
    v.components[6] = OTElement::var(6);
    v.labelled(FieldLabel::Rg11)
}

pub fn rk1(variant: FieldVariant) -> VectorFieldOT {
    let mut v = VectorFieldOT::zero();
    let c1 = OTElement::new(poly("3125*t0^4*t6 - 3125*t0^3*t5 - t2*t5 + t3*t6"), 0, 0, 1).scale(&rat(-1, 625));
    v.components[1] = c1;
    v.components[2] = OTElement::var(6).neg();
    v.components[3] = OTElement::var(5).neg();
    if variant == FieldVariant::Printed {
        v = v.neg();
    }
    v.labelled(FieldLabel::Rk1)
}

pub fn rt11() -> VectorFieldOT {
    let mut v = VectorFieldOT::zero();
    v.components[6] = over_t5("625*t0^5 - 625*t4");
    v.labelled(FieldLabel::Rt11)
}

pub fn rt1(variant: FieldVariant) -> VectorFieldOT {
    let mut v = VectorFieldOT::zero();
    v.components[1] = over_t5("3125*t0^4 + t3");
    v.components[2] = over_t5("625*t4 - 625*t0^5");
    if variant == FieldVariant::Printed {
        v = v.neg();
    }
    v.labelled(FieldLabel::Rt1)
}

pub fn rt() -> VectorFieldOT {
    VectorFieldOT::partial(1).labelled(FieldLabel::Rt)
}

/// The seven fields in frame order R_1, R_g0, R_g11, R_k1, R_t11, R_t1, R_t.
pub fn fields(variant: FieldVariant) -> [VectorFieldOT; 7] {
    [r1(), rg0(), rg11(), rk1(variant), rt11(), rt1(variant), rt()]
}

pub fn canonical_fields() -> [VectorFieldOT; 7] {
    fields(FieldVariant::Canonical)
}

pub fn field(label: FieldLabel) -> VectorFieldOT {
    canonical_fields()[label.index()].clone()
}

/// `sum_i c_i F_i`.
pub fn combine(coeffs: &[OTElement], frame: &[VectorFieldOT]) -> VectorFieldOT {
    let mut acc = VectorFieldOT::zero();
    for (c, f) in coeffs.iter().zip(frame) {
        if !c.is_zero() {
            acc = acc.add(&f.mul_fn(c));
        }
    }
    acc
}
