//! Mirror-side configuration: operator, normalization constants and the
//! boundary data, each with a provenance note.

use bcov_numeric::{int, rat, Rational};
use serde::{Deserialize, Serialize};

use crate::frobenius::PicardFuchs;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MirrorConfig {
    /// Series truncation order in q.
    pub order: usize,
    pub operator: PicardFuchs,
    /// `z = t4 / (z_scale * t0^t0_exponent)`.
    pub z_scale: i64,
    pub t0_exponent: u32,
    /// `t0 = c * y0` on the special locus.
    #[serde(with = "rat_str")]
    pub c: Rational,
    /// `R_1 = kappa * theta_q`; `None` derives it from the Yukawa policy.
    #[serde(with = "opt_rat_str")]
    pub kappa: Option<Rational>,
    /// A-model Euler characteristic.
    pub chi: i64,
    /// Integral of c_2 against the hyperplane class.
    pub c2h: i64,
    /// Classical triple intersection, the constant term of the Yukawa.
    pub classical_yukawa: i64,
    pub boundary: BoundaryData,
    /// Multiplier between the printed genus-one exponents and the ones used.
    pub genus1_normalization: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundaryData {
    pub gap_formula: String,
    pub gap_provenance: String,
    pub constant_map_formula: String,
    pub constant_map_provenance: String,
    pub gv_provenance: String,
}

impl Default for BoundaryData {
    fn default() -> Self {
        BoundaryData {
            gap_formula: "F_g = nu^(1-g) B_2g / (2g (2g-2)) t_c^(2-2g) + O(t_c^0), nu = lim t_c Y".into(),
            gap_provenance: "conifold gap condition; Huang-Klemm-Quackenbush, Ghoshal-Vafa".into(),
            constant_map_formula: "F_g(q=0) = (-1)^g chi |B_2g B_2g-2| / (4g (2g-2) (2g-2)!)".into(),
            constant_map_provenance: "constant maps; Faber-Pandharipande, Bershadsky-Cecotti-Ooguri-Vafa".into(),
            gv_provenance: "Gopakumar-Vafa multicover formula".into(),
        }
    }
}

impl Default for MirrorConfig {
    fn default() -> Self {
        MirrorConfig {
            order: 12,
            operator: PicardFuchs::quintic(),
            z_scale: 3125,
            t0_exponent: 5,
            c: rat(1, 5),
            kappa: None,
            chi: -200,
            c2h: 50,
            classical_yukawa: 5,
            boundary: BoundaryData::default(),
            genus1_normalization: 5,
        }
    }
}

impl MirrorConfig {
    pub fn chi_b(&self) -> Rational {
        int(-self.chi)
    }
}

pub(crate) mod rat_str {
    use bcov_numeric::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod opt_rat_str {
    use bcov_numeric::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_str("auto"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = String::deserialize(d)?;
        if s == "auto" {
            return Ok(None);
        }
        parse_rational(&s).map(Some).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod rat_vecs {
    use bcov_numeric::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let t: Vec<Vec<String>> = Vec::deserialize(d)?;
        t.iter()
            .map(|r| r.iter().map(|x| parse_rational(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}
