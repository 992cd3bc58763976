use bcov_numeric::int;
use bcov_polyring::{OTElement, NVARS};

use crate::fields::{vf_bracket, FieldLabel};
use crate::frame::Frame;
use crate::yukawa::YukawaOT;

type Coeffs = [OTElement; NVARS];

fn zero() -> Coeffs {
    std::array::from_fn(|_| OTElement::zero())
}

fn with(terms: &[(FieldLabel, OTElement)]) -> Coeffs {
    let mut c = zero();
    for (l, v) in terms {
        c[l.index()] = c[l.index()].add(v);
    }
    c
}

fn k(n: i64) -> OTElement {
    OTElement::constant(int(n))
}

/// Expected `[X, Y]` in the frame, h = 1 and C_111 = Y_111.
pub fn table_entry(x: FieldLabel, y: FieldLabel, yuk: &YukawaOT) -> Coeffs {
    use FieldLabel::*;
    let c = &yuk.value;
    let upper = |x: FieldLabel, y: FieldLabel| -> Option<Coeffs> {
        Some(match (x, y) {
            (Rg0, Rt1) => with(&[(Rt1, k(-1))]),
            (Rg0, Rt) => with(&[(Rt, k(-2))]),
            (Rg0, Rk1) => with(&[(Rk1, k(-1))]),
            (Rg0, R1) => with(&[(R1, k(1))]),
            (Rg11, Rt11) => with(&[(Rt11, k(-2))]),
            (Rg11, Rt1) => with(&[(Rt1, k(-1))]),
            (Rg11, Rk1) => with(&[(Rk1, k(1))]),
            (Rg11, R1) => with(&[(R1, k(-1))]),
            (Rt11, Rk1) => with(&[(Rt1, k(1))]),
            (Rt11, R1) => with(&[(Rg11, c.neg())]),
            (Rt1, Rk1) => with(&[(Rt, k(2))]),
            (Rt1, R1) => with(&[(Rt11, k(2)), (Rk1, c.neg())]),
            (Rt, R1) => with(&[(Rt1, k(1))]),
            (Rk1, R1) => with(&[(Rg0, k(-1)), (Rg11, k(1))]),
            _ => return None,
        })
    };
    if let Some(e) = upper(x, y) {
        return e;
    }
    if let Some(e) = upper(y, x) {
        return e.map(|v| v.neg());
    }
    zero()
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub x: FieldLabel,
    pub y: FieldLabel,
    pub expected: Coeffs,
    pub got: Coeffs,
}

impl TableEntry {
    /// Coefficient differences `got - expected`, nonzero ones only.
    pub fn residual(&self) -> Vec<(FieldLabel, OTElement)> {
        FieldLabel::ALL
            .into_iter()
            .zip(self.got.iter().zip(&self.expected))
            .map(|(l, (g, e))| (l, g.sub(e)))
            .filter(|(_, d)| !d.is_zero())
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.residual().is_empty()
    }
}

fn entry(frame: &Frame, i: usize, j: usize, yuk: &YukawaOT) -> TableEntry {
    let (fx, fy) = (&frame.fields[i], &frame.fields[j]);
    let (x, y) = (fx.label.expect("frame fields are labelled"), fy.label.expect("frame fields are labelled"));
    let got = frame.decompose(&vf_bracket(fx, fy));
    TableEntry { x, y, expected: table_entry(x, y, yuk), got }
}

/// All 49 ordered pairs, sorted by pair index.
pub fn verify_bracket_table(frame: &Frame, yuk: &YukawaOT) -> Vec<TableEntry> {
    let n = frame.fields.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pairs.par_iter().map(|&(i, j)| entry(frame, i, j, yuk)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs.iter().map(|&(i, j)| entry(frame, i, j, yuk)).collect()
    }
}
