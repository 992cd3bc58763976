//! Sparse exact linear systems `A x = b_k` with several right-hand sides.
//!
//! The primary solver is fraction-free integer elimination with a
//! Markowitz-style pivot rule (fewest entries in the pivot column, then in
//! the pivot row, ties broken by index). A multi-modular solver with rational
//! reconstruction serves as an independent cross-check; both report the
//! solution space in a canonical form so that their outputs compare exactly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// A sparse system; rows hold (column, coefficient) pairs.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pub ncols: usize,
    pub nrhs: usize,
    rows: Vec<(Vec<(usize, Rational)>, Vec<Rational>)>,
}

impl SparseSystem {
    pub fn new(ncols: usize, nrhs: usize) -> Self {
        SparseSystem { ncols, nrhs, rows: Vec::new() }
    }

    /// Adds `sum entries = rhs`. Zero coefficients are dropped; rows that are
    /// entirely zero are kept only if some right-hand side is nonzero.
    pub fn push_row(&mut self, entries: Vec<(usize, Rational)>, rhs: Vec<Rational>) {
        assert_eq!(rhs.len(), self.nrhs);
        let mut e: Vec<(usize, Rational)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        e.sort_by_key(|x| x.0);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(e.len());
        for (c, v) in e {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        if merged.is_empty() && rhs.iter().all(Zero::is_zero) {
            return;
        }
        assert!(merged.iter().all(|(c, _)| *c < self.ncols));
        self.rows.push((merged, rhs));
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.0.len()).sum()
    }

    /// `A x - b_k` for a candidate solution; empty when x solves every row.
    pub fn residual(&self, x: &[Rational], k: usize) -> Vec<(usize, Rational)> {
        let mut out = Vec::new();
        for (i, (e, b)) in self.rows.iter().enumerate() {
            let mut s = -b[k].clone();
            for (c, v) in e {
                s += v * &x[*c];
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    /// Residual of a kernel vector (homogeneous system).
    pub fn kernel_residual(&self, x: &[Rational]) -> usize {
        self.rows
            .iter()
            .filter(|(e, _)| {
                let mut s = Rational::zero();
                for (c, v) in e {
                    s += v * &x[*c];
                }
                !s.is_zero()
            })
            .count()
    }
}

/// Affine solution spaces `x_k = particular_k + span(kernel)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub ncols: usize,
    /// One particular solution per right-hand side (free variables zero).
    pub particular: Vec<Vec<Rational>>,
    /// Kernel basis, one vector per free column.
    pub kernel: Vec<Vec<Rational>>,
    pub free_cols: Vec<usize>,
    /// Right-hand-side combinations left over by zero rows: for each such
    /// row, the coefficients multiplying b_0..b_{k-1}. A combination of
    /// right-hand sides is solvable iff it annihilates all of them.
    pub obstructions: Vec<Vec<Rational>>,
}

impl Solution {
    pub fn is_consistent(&self, k: usize) -> bool {
        self.obstructions.iter().all(|o| o[k].is_zero())
    }

    /// Canonical description independent of pivot choices: the kernel in
    /// reduced row echelon form (natural column order) and each particular
    /// solution reduced against it so that it vanishes on the kernel's
    /// leading columns.
    pub fn canonical(&self) -> Canonical {
        let mut basis = self.kernel.clone();
        rref_rows(&mut basis);
        let leads: Vec<usize> = basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let particular = self
            .particular
            .iter()
            .map(|p| {
                let mut v = p.clone();
                for (row, &c) in basis.iter().zip(&leads) {
                    if !v[c].is_zero() {
                        let f = v[c].clone();
                        for (x, y) in v.iter_mut().zip(row) {
                            *x -= &f * y;
                        }
                    }
                }
                v
            })
            .collect();
        let mut obstructions = self.obstructions.clone();
        rref_rows(&mut obstructions);
        Canonical { kernel: basis, particular, obstructions }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub kernel: Vec<Vec<Rational>>,
    pub particular: Vec<Vec<Rational>>,
    pub obstructions: Vec<Vec<Rational>>,
}

fn rref_rows(rows: &mut Vec<Vec<Rational>>) {
    if rows.is_empty() {
        return;
    }
    let n = rows[0].len();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
}

// ---------------------------------------------------------------------------
// Fraction-free integer elimination.

#[derive(Clone, Debug)]
struct IntRow {
    /// Sorted by column; the right-hand sides live at columns ncols.. .
    e: Vec<(usize, BigInt)>,
}

impl IntRow {
    fn coeff(&self, c: usize) -> Option<&BigInt> {
        self.e.binary_search_by_key(&c, |x| x.0).ok().map(|i| &self.e[i].1)
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, v) in &self.e {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, v) in self.e.iter_mut() {
                *v /= &g;
            }
        }
    }

    /// `a * self - b * other`.
    fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> IntRow {
        let mut out = Vec::with_capacity(self.e.len() + other.e.len());
        let (mut i, mut j) = (0, 0);
        while i < self.e.len() || j < other.e.len() {
            let ci = self.e.get(i).map_or(usize::MAX, |x| x.0);
            let cj = other.e.get(j).map_or(usize::MAX, |x| x.0);
            if ci < cj {
                out.push((ci, a * &self.e[i].1));
                i += 1;
            } else if cj < ci {
                out.push((cj, -(b * &other.e[j].1)));
                j += 1;
            } else {
                let v = a * &self.e[i].1 - b * &other.e[j].1;
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        let mut r = IntRow { e: out };
        r.make_primitive();
        r
    }
}

fn to_int_row(e: &[(usize, Rational)], rhs: &[Rational], ncols: usize) -> IntRow {
    let mut l = BigInt::one();
    for v in e.iter().map(|x| &x.1).chain(rhs.iter()) {
        l = l.lcm(v.denom());
    }
    let scale = |v: &Rational| (v * Rational::from_integer(l.clone())).to_integer();
    let mut out: Vec<(usize, BigInt)> = e.iter().map(|(c, v)| (*c, scale(v))).collect();
    for (k, v) in rhs.iter().enumerate() {
        if !v.is_zero() {
            out.push((ncols + k, scale(v)));
        }
    }
    let mut r = IntRow { e: out };
    r.make_primitive();
    r
}

/// Statistics of one elimination, for reports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElimStats {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub rank: usize,
    pub max_bits: u64,
}

trait Pivoting {
    fn nnz_in(&self, r: usize) -> usize;
}

/// Markowitz-style selection shared by both solvers: the active column with
/// the fewest active rows, then within it the shortest row; ties by index.
fn select_pivot(col_rows: &[BTreeSet<usize>], ncols: usize, rows: &impl Pivoting) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (c, set) in col_rows.iter().enumerate().take(ncols) {
        let n = set.len();
        if n == 0 {
            continue;
        }
        if best.is_none_or(|(_, bn)| n < bn) {
            best = Some((c, n));
            if n == 1 {
                break;
            }
        }
    }
    let (c, _) = best?;
    let r = *col_rows[c].iter().min_by_key(|&&r| (rows.nnz_in(r), r)).unwrap();
    Some((c, r))
}

struct IntRows<'a>(&'a [Option<IntRow>]);

impl Pivoting for IntRows<'_> {
    fn nnz_in(&self, r: usize) -> usize {
        self.0[r].as_ref().map_or(usize::MAX, |x| x.e.len())
    }
}

/// Solves with fraction-free elimination.
pub fn solve_fraction_free(sys: &SparseSystem) -> (Solution, ElimStats) {
    let n = sys.ncols;
    let k = sys.nrhs;
    let mut rows: Vec<Option<IntRow>> = Vec::with_capacity(sys.rows.len());
    let mut obstructions_int: Vec<IntRow> = Vec::new();
    for (e, b) in &sys.rows {
        let r = to_int_row(e, b, n);
        if e.is_empty() {
            obstructions_int.push(r);
            rows.push(None);
        } else {
            rows.push(Some(r));
        }
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.iter().flat_map(|r| &r.e) {
            if *c < n {
                col_rows[*c].insert(i);
            }
        }
    }
    let mut pivots: Vec<(usize, IntRow)> = Vec::new();
    let mut max_bits = 0u64;
    while let Some((c, r)) = select_pivot(&col_rows, n, &IntRows(&rows)) {
        let prow = rows[r].take().unwrap();
        for (cc, _) in &prow.e {
            if *cc < n {
                col_rows[*cc].remove(&r);
            }
        }
        let p = prow.coeff(c).unwrap().clone();
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for j in targets {
            let old = rows[j].take().unwrap();
            let a = old.coeff(c).unwrap().clone();
            let g = p.gcd(&a);
            let new = old.combine(&(&p / &g), &prow, &(&a / &g));
            for (cc, _) in &old.e {
                if *cc < n {
                    col_rows[*cc].remove(&j);
                }
            }
            for (cc, v) in &new.e {
                max_bits = max_bits.max(v.bits());
                if *cc < n {
                    col_rows[*cc].insert(j);
                }
            }
            if new.e.first().is_some_and(|x| x.0 < n) {
                rows[j] = Some(new);
            } else if !new.e.is_empty() {
                obstructions_int.push(new);
            }
        }
        pivots.push((c, prow));
    }
    // Back substitution: clear each pivot column from earlier pivot rows.
    for kk in (0..pivots.len()).rev() {
        let (c, prow) = pivots[kk].clone();
        let p = prow.coeff(c).unwrap().clone();
        for i in 0..kk {
            if let Some(a) = pivots[i].1.coeff(c).cloned() {
                let g = p.gcd(&a);
                let new = pivots[i].1.combine(&(&p / &g), &prow, &(&a / &g));
                for (_, v) in &new.e {
                    max_bits = max_bits.max(v.bits());
                }
                pivots[i].1 = new;
            }
        }
    }
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|x| x.0).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut particular = vec![vec![Rational::zero(); n]; k];
    let mut kernel = vec![vec![Rational::zero(); n]; free_cols.len()];
    let free_index: std::collections::HashMap<usize, usize> = free_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    for (f, &c) in free_cols.iter().enumerate() {
        kernel[f][c] = Rational::one();
    }
    for (c, row) in &pivots {
        let p = row.coeff(*c).unwrap();
        for (cc, v) in &row.e {
            if *cc == *c {
                continue;
            }
            let q = Rational::new(v.clone(), p.clone());
            if *cc >= n {
                particular[*cc - n][*c] = q;
            } else {
                kernel[free_index[cc]][*c] = -q;
            }
        }
    }
    let obstructions = obstructions_int
        .iter()
        .map(|r| {
            let mut o = vec![Rational::zero(); k];
            for (c, v) in &r.e {
                o[*c - n] = Rational::from_integer(v.clone());
            }
            o
        })
        .collect();
    let stats = ElimStats { rows: sys.nrows(), cols: n, nnz: sys.nnz(), rank: pivots.len(), max_bits };
    (Solution { ncols: n, particular, kernel, free_cols, obstructions }, stats)
}

// ---------------------------------------------------------------------------
// Modular elimination.

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending primes just below 2^62.
pub fn primes_below_2_62(count: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while v.len() < count {
        if is_prime(n) {
            v.push(n);
        }
        n -= 2;
    }
    v
}

fn reduce_mod(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor(&pb).to_u64().unwrap();
    let den = r.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    Some(mulmod(num, invmod(den, p), p))
}

#[derive(Clone)]
struct ModRow {
    e: Vec<(usize, u64)>,
}

struct ModRows<'a>(&'a [Option<ModRow>]);

impl Pivoting for ModRows<'_> {
    fn nnz_in(&self, r: usize) -> usize {
        self.0[r].as_ref().map_or(usize::MAX, |x| x.e.len())
    }
}

fn mod_combine(row: &ModRow, a: u64, prow: &ModRow, p: u64) -> ModRow {
    // row - a * prow
    let mut out = Vec::with_capacity(row.e.len() + prow.e.len());
    let (mut i, mut j) = (0, 0);
    while i < row.e.len() || j < prow.e.len() {
        let ci = row.e.get(i).map_or(usize::MAX, |x| x.0);
        let cj = prow.e.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push(row.e[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, (p - mulmod(a, prow.e[j].1, p)) % p));
            j += 1;
        } else {
            let v = (row.e[i].1 + p - mulmod(a, prow.e[j].1, p)) % p;
            if v != 0 {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    ModRow { e: out }
}

/// Canonical solution data modulo one prime; `None` if the prime divides a
/// denominator of the input.
fn solve_mod(sys: &SparseSystem, p: u64) -> Option<ModCanonical> {
    let n = sys.ncols;
    let k = sys.nrhs;
    let mut rows: Vec<Option<ModRow>> = Vec::with_capacity(sys.rows.len());
    let mut obstructions: Vec<ModRow> = Vec::new();
    for (e, b) in &sys.rows {
        let mut r = Vec::new();
        for (c, v) in e {
            let x = reduce_mod(v, p)?;
            if x != 0 {
                r.push((*c, x));
            }
        }
        for (kk, v) in b.iter().enumerate() {
            let x = reduce_mod(v, p)?;
            if x != 0 {
                r.push((n + kk, x));
            }
        }
        if r.first().is_some_and(|x| x.0 < n) {
            rows.push(Some(ModRow { e: r }));
        } else {
            if !r.is_empty() {
                obstructions.push(ModRow { e: r });
            }
            rows.push(None);
        }
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.iter().flat_map(|r| &r.e) {
            if *c < n {
                col_rows[*c].insert(i);
            }
        }
    }
    let mut pivots: Vec<(usize, ModRow)> = Vec::new();
    while let Some((c, r)) = select_pivot(&col_rows, n, &ModRows(&rows)) {
        let mut prow = rows[r].take().unwrap();
        for (cc, _) in &prow.e {
            if *cc < n {
                col_rows[*cc].remove(&r);
            }
        }
        let inv = invmod(prow.e[prow.e.binary_search_by_key(&c, |x| x.0).unwrap()].1, p);
        for (_, v) in prow.e.iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for j in targets {
            let old = rows[j].take().unwrap();
            let a = old.e[old.e.binary_search_by_key(&c, |x| x.0).unwrap()].1;
            let new = mod_combine(&old, a, &prow, p);
            for (cc, _) in &old.e {
                if *cc < n {
                    col_rows[*cc].remove(&j);
                }
            }
            for (cc, _) in &new.e {
                if *cc < n {
                    col_rows[*cc].insert(j);
                }
            }
            if new.e.first().is_some_and(|x| x.0 < n) {
                rows[j] = Some(new);
            } else if !new.e.is_empty() {
                obstructions.push(new);
            }
        }
        pivots.push((c, prow));
    }
    for kk in (0..pivots.len()).rev() {
        let (c, prow) = pivots[kk].clone();
        for i in 0..kk {
            let row = &pivots[i].1;
            if let Ok(pos) = row.e.binary_search_by_key(&c, |x| x.0) {
                let a = row.e[pos].1;
                pivots[i].1 = mod_combine(row, a, &prow, p);
            }
        }
    }
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|x| x.0).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let free_index: std::collections::HashMap<usize, usize> = free_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut particular = vec![vec![0u64; n]; k];
    let mut kernel = vec![vec![0u64; n]; free_cols.len()];
    for (f, &c) in free_cols.iter().enumerate() {
        kernel[f][c] = 1;
    }
    for (c, row) in &pivots {
        for (cc, v) in &row.e {
            if *cc == *c {
                continue;
            }
            if *cc >= n {
                particular[*cc - n][*c] = *v;
            } else {
                kernel[free_index[cc]][*c] = (p - *v) % p;
            }
        }
    }
    let mut obs: Vec<Vec<u64>> = obstructions
        .iter()
        .map(|r| {
            let mut o = vec![0u64; k];
            for (c, v) in &r.e {
                o[*c - n] = *v;
            }
            o
        })
        .collect();
    rref_mod(&mut kernel, p);
    let leads: Vec<usize> = kernel.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    for v in particular.iter_mut() {
        for (row, &c) in kernel.iter().zip(&leads) {
            if v[c] != 0 {
                let f = v[c];
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
    }
    rref_mod(&mut obs, p);
    Some(ModCanonical { kernel, particular, obstructions: obs })
}

fn rref_mod(rows: &mut Vec<Vec<u64>>, p: u64) {
    if rows.is_empty() {
        return;
    }
    let n = rows[0].len();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = invmod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ModCanonical {
    kernel: Vec<Vec<u64>>,
    particular: Vec<Vec<u64>>,
    obstructions: Vec<Vec<u64>>,
}

impl ModCanonical {
    fn shape(&self) -> (usize, usize) {
        (self.kernel.len(), self.obstructions.len())
    }
    fn flat(&self) -> Vec<u64> {
        self.kernel.iter().chain(&self.particular).chain(&self.obstructions).flatten().copied().collect()
    }
}

/// Rational reconstruction of `a mod m` with |num|, den <= sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, s1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularReport {
    pub primes_used: usize,
    pub canonical: Canonical,
}

/// Multi-modular solve: CRT over primes near 2^62 until the reconstructed
/// canonical solution is stable under one more prime.
pub fn solve_multimodular(sys: &SparseSystem, max_primes: usize) -> Option<ModularReport> {
    let primes = primes_below_2_62(max_primes);
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut shape: Option<(usize, usize, Vec<usize>)> = None;
    let mut last: Option<Vec<Rational>> = None;
    let mut used = 0;
    for &p in &primes {
        let Some(mc) = solve_mod(sys, p) else { continue };
        let leads: Vec<usize> = mc.kernel.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
        let sh = (mc.shape().0, mc.shape().1, leads);
        match &shape {
            None => shape = Some(sh),
            Some(s) if *s != sh => {
                // Unlucky prime (or an earlier one was): keep the generic shape,
                // which has the larger rank, and restart accumulation.
                if sh.0 < s.0 || (sh.0 == s.0 && sh.1 < s.1) {
                    shape = Some(sh);
                    modulus = BigInt::one();
                    residues.clear();
                    last = None;
                } else {
                    continue;
                }
            }
            _ => {}
        }
        used += 1;
        let flat = mc.flat();
        let pb = BigInt::from(p);
        if residues.is_empty() {
            residues = flat.iter().map(|&x| BigInt::from(x)).collect();
            modulus = pb;
        } else {
            // CRT: x = r + m * ((a - r) * m^{-1} mod p)
            let minv = BigInt::from(invmod((&modulus % &pb).to_u64().unwrap(), p));
            for (r, &a) in residues.iter_mut().zip(&flat) {
                let t = ((BigInt::from(a) - &*r) * &minv).mod_floor(&pb);
                *r += &modulus * t;
            }
            modulus *= &pb;
        }
        let rec: Option<Vec<Rational>> = residues.iter().map(|r| rational_reconstruct(r, &modulus)).collect();
        if let Some(rec) = rec {
            if last.as_ref() == Some(&rec) {
                let (nk, no, _) = shape.clone().unwrap();
                let n = sys.ncols;
                let k = sys.nrhs;
                let mut it = rec.into_iter();
                let kernel: Vec<Vec<Rational>> = (0..nk).map(|_| it.by_ref().take(n).collect()).collect();
                let particular: Vec<Vec<Rational>> = (0..k).map(|_| it.by_ref().take(n).collect()).collect();
                let obstructions: Vec<Vec<Rational>> = (0..no).map(|_| it.by_ref().take(k).collect()).collect();
                return Some(ModularReport { primes_used: used, canonical: Canonical { kernel, particular, obstructions } });
            }
            last = Some(rec);
        }
    }
    None
}
