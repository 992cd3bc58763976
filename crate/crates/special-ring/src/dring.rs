//! The h = 1 differential ring: a derivation on Laurent polynomials in the
//! generators and the extended alphabet.

use bcov_numeric::{int, rat};

use crate::symrat::{Sym, SymRat};

fn s(x: Sym) -> SymRat {
    SymRat::sym(x)
}

/// Image of one symbol under the derivation.
pub fn derivative_of(x: Sym) -> SymRat {
    use Sym::*;
    let c = s(C111);
    match x {
        G0 => s(L1).mul(&s(G0)).neg(),
        G => s(G).mul(&s(L1).sub(&c.mul(&s(T11))).add(&s(G0).mul(&s(S)))),
        T11 => s(T1)
            .add(&s(T11).mul(&s(L1)))
            .scale(&int(2))
            .sub(&c.mul(&s(T11).pow(2)))
            .add(&s(G0).mul(&s(H11))),
        T1 => s(T)
            .add(&s(T1).mul(&s(L1)))
            .scale(&int(2))
            .sub(&s(T1).mul(&s(L1)))
            .sub(&s(K11).mul(&s(T11)))
            .add(&s(G0).pow(2).mul(&s(Hh1))),
        T => c
            .mul(&s(T1).pow(2))
            .scale(&rat(1, 2))
            .sub(&s(L1).mul(&s(T)).scale(&int(2)))
            .sub(&s(K11).mul(&s(T1)))
            .add(&s(G0).pow(3).mul(&s(Hh))),
        L1 => s(L1)
            .pow(2)
            .neg()
            .sub(&c.mul(&s(T1)))
            .add(&SymRat::monomial(int(1), &[(G0, -2), (K11, 1)])),
        _ => SymRat::zero(),
    }
}

/// `sum_x (df/dx) d(x)`.
pub fn dring_derivation(f: &SymRat) -> SymRat {
    let mut acc = SymRat::zero();
    for x in f.symbols() {
        let d = derivative_of(x);
        if !d.is_zero() {
            acc = acc.add(&f.partial(x).mul(&d));
        }
    }
    acc
}
