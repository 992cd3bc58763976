//! Multicover inversion of genus-g generating series into BPS numbers.

use std::collections::BTreeMap;

use bcov_numeric::{int, QSeries, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::MirrorError;

/// `(genus, degree) -> n^g_d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BpsTable {
    pub entries: BTreeMap<(u32, u32), BigInt>,
}

impl BpsTable {
    pub fn get(&self, g: u32, d: u32) -> Option<&BigInt> {
        self.entries.get(&(g, d))
    }

    pub fn row(&self, g: u32) -> Vec<(u32, BigInt)> {
        self.entries.iter().filter(|((h, _), _)| *h == g).map(|((_, d), n)| (*d, n.clone())).collect()
    }

    fn value(&self, g: u32, d: u32) -> Rational {
        self.get(g, d).map_or_else(Rational::zero, |n| Rational::from_integer(n.clone()))
    }
}

/// `[lambda^(2g-2)] (2 sin(lambda/2))^(2h-2)`, for `h <= g`.
pub fn multicover_coefficient(h: u32, g: u32) -> Rational {
    if h > g {
        return Rational::zero();
    }
    // (2 sin(x/2))^2 = x^2 s(x), s = sum_j 2 (-1)^j x^(2j) / (2j+2)!; in u = x^2.
    let n = (g - h) as usize;
    let mut c = Vec::new();
    let mut fact = Rational::one();
    for j in 0..=n {
        let k = 2 * j as i64 + 2;
        if j == 0 {
            fact = int(2);
        } else {
            fact = fact * int(k - 1) * int(k);
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        c.push(int(2 * sign) / &fact);
    }
    let s = QSeries::new(c, n);
    let p = if h == 0 { s.inverse().expect("s(0) = 1") } else { s.pow(h - 1) };
    p.coeff(n).clone()
}

/// Extracts `n^g_d` for d = 1..=max_d from a series whose q^n coefficient is
/// `sum_h sum_{dk = n} n^h_d c(h, g) k^(2g-3) (dk)^deriv`; `deriv` is the
/// number of theta_q applied (3 for the Yukawa, 1 for theta F_1, 0 for F_g).
pub fn extract(series: &QSeries, g: u32, deriv: u32, max_d: u32, lower: &BpsTable) -> Result<Vec<(u32, BigInt)>, MirrorError> {
    if (max_d as usize) > series.order() {
        return Err(MirrorError::Precision { wanted: max_d as usize, got: series.order() });
    }
    let weight = |d: u32, k: u32| -> Rational {
        let kk = int(k as i64);
        let mut w = Rational::one();
        let e = 2 * g as i64 - 3;
        for _ in 0..e.unsigned_abs() {
            w = if e >= 0 { w * &kk } else { w / &kk };
        }
        for _ in 0..deriv {
            w *= int((d * k) as i64);
        }
        w
    };
    let top = multicover_coefficient(g, g);
    let mut found: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut out = Vec::new();
    for n in 1..=max_d {
        let mut rest = series.coeff(n as usize).clone();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let k = n / d;
            let w = weight(d, k);
            for h in 0..g {
                rest -= lower.value(h, d) * multicover_coefficient(h, g) * &w;
            }
            if d < n {
                rest -= &found[&d] * &top * &w;
            }
        }
        let val = rest / (top.clone() * weight(n, 1));
        if !val.is_integer() {
            return Err(MirrorError::NonIntegral { genus: g, degree: n, value: val.to_string() });
        }
        out.push((n, val.to_integer()));
        found.insert(n, val);
    }
    Ok(out)
}

/// Stores an extracted row.
pub fn insert_row(table: &mut BpsTable, g: u32, row: &[(u32, BigInt)]) {
    for (d, n) in row {
        table.entries.insert((g, *d), n.clone());
    }
}
