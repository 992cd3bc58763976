use bcov_numeric::int;
use bcov_polyring::{OTElement, WeightedPoly};

/// Which base the Yukawa coupling is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum YukawaVariant {
    /// `5^8 (t4 - t0^5)^2 / t5^3`.
    #[default]
    Disc,
    /// `5^8 (t4 - t0)^2 / t5^3`.
    Printed,
}

impl YukawaVariant {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "disc" => Some(YukawaVariant::Disc),
            "printed" => Some(YukawaVariant::Printed),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            YukawaVariant::Disc => "disc",
            YukawaVariant::Printed => "printed",
        }
    }
}

/// The Yukawa coupling Y_111.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YukawaOT {
    pub value: OTElement,
    pub variant: YukawaVariant,
}

impl YukawaOT {
    pub fn new(variant: YukawaVariant) -> Self {
        let base = match variant {
            YukawaVariant::Disc => WeightedPoly::disc(),
            YukawaVariant::Printed => WeightedPoly::parse("t4 - t0").unwrap(),
        };
        let value = OTElement::new(base.pow(2).scale(&int(390625)), 3, 0, 0);
        YukawaOT { value, variant }
    }
}

impl Default for YukawaOT {
    fn default() -> Self {
        Self::new(YukawaVariant::Disc)
    }
}
