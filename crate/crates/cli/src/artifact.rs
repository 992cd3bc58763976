//! Exportable objects and their exact encodings.

use bcov_numeric::{parse_rational, QSeries, Rational};
use bcov_polyring::OTElement;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    /// Fundamental period in z.
    Y0,
    /// Mirror map z(q).
    Z,
    /// Inverse mirror map q(z).
    Q,
    /// All seven t_i(q).
    T,
    Ti(usize),
    Disc,
    Yukawa,
    YukawaWronskian,
    /// theta_q F_1.
    F1,
    Fg,
    /// Y_111 as an element of O_T.
    Y111,
}

impl Object {
    pub const ALL: [&'static str; 11] =
        ["y0", "z", "q", "t", "t0..t6", "disc", "yukawa", "yukawa-wronskian", "F1", "Fg", "Y111"];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "y0" => Object::Y0,
            "z" => Object::Z,
            "q" => Object::Q,
            "t" => Object::T,
            "disc" => Object::Disc,
            "yukawa" => Object::Yukawa,
            "yukawa-wronskian" => Object::YukawaWronskian,
            "F1" => Object::F1,
            "Fg" => Object::Fg,
            "Y111" => Object::Y111,
            _ => match s.strip_prefix('t').and_then(|i| i.parse::<usize>().ok()) {
                Some(i) if i < 7 && s.len() == 2 => Object::Ti(i),
                _ => {
                    return Err(CliError::Usage(format!("unknown object {s:?}; expected one of {}", Self::ALL.join(", "))))
                }
            },
        })
    }
}

/// A truncated series: coefficients as `"p/q"` strings plus the printed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesArtifact {
    pub var: char,
    /// Coefficients are known through `var^order`.
    pub order: usize,
    pub coeffs: Vec<String>,
    pub text: String,
}

impl SeriesArtifact {
    pub fn new(s: &QSeries, var: char) -> Self {
        SeriesArtifact {
            var,
            order: s.order(),
            coeffs: (0..=s.order()).map(|k| s.coeff(k).to_string()).collect(),
            text: s.to_text_var(var),
        }
    }

    /// Rebuilds the series from the coefficient list and checks it against the text.
    pub fn to_series(&self) -> Result<QSeries, CliError> {
        let cs: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| parse_rational(c).map_err(|e| CliError::Usage(format!("coefficient {c:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        if cs.len() != self.order + 1 {
            return Err(CliError::Usage(format!("{} coefficients for order {}", cs.len(), self.order)));
        }
        let s = QSeries::new(cs, self.order);
        let t = QSeries::parse_var(&self.text, self.var).map_err(|e| CliError::Usage(format!("series text: {e}")))?;
        if t != s {
            return Err(CliError::Usage("series text and coefficients disagree".into()));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementArtifact {
    pub text: String,
}

impl ElementArtifact {
    pub fn new(e: &OTElement) -> Self {
        ElementArtifact { text: e.to_string() }
    }

    pub fn to_element(&self) -> Result<OTElement, CliError> {
        OTElement::parse(&self.text).map_err(|e| CliError::Usage(format!("ring element: {e}")))
    }
}
