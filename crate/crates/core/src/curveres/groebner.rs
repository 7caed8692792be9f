//! Buchberger's algorithm in two variables, lexicographic order with `y > x`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::Poly;
use crate::ering::Rat;

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a[1].cmp(&b[1]).then(a[0].cmp(&b[0]))
}

fn leading(p: &Poly) -> Option<(Vec<u32>, Rat)> {
    p.terms()
        .max_by(|a, b| lex(a.0, b.0))
        .map(|(e, c)| (e.clone(), c.clone()))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monic(p: &Poly) -> Poly {
    match leading(p) {
        Some((_, c)) => p.scale(&c.recip()),
        None => p.clone(),
    }
}

/// Full reduction of `p` modulo `basis`.
fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let leads: Vec<(Vec<u32>, Rat)> = basis.iter().map(|g| leading(g).expect("nonzero")).collect();
    let mut rest = p.clone();
    let mut out = Poly::zero(p.nvars());
    while let Some((e, c)) = leading(&rest) {
        match leads.iter().position(|(le, _)| divides(le, &e)) {
            Some(i) => {
                let (le, lc) = &leads[i];
                let shift: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let factor = Poly::monomial(shift, &c / lc);
                rest = &rest - &(&factor * &basis[i]);
            }
            None => {
                let t = Poly::monomial(e, c);
                rest = &rest - &t;
                out = out + t;
            }
        }
    }
    out
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (ef, cf) = leading(f).expect("nonzero");
    let (eg, cg) = leading(g).expect("nonzero");
    let l: Vec<u32> = ef.iter().zip(&eg).map(|(a, b)| *a.max(b)).collect();
    let mf: Vec<u32> = l.iter().zip(&ef).map(|(a, b)| a - b).collect();
    let mg: Vec<u32> = l.iter().zip(&eg).map(|(a, b)| a - b).collect();
    &(&Poly::monomial(mf, cf.recip()) * f) - &(&Poly::monomial(mg, cg.recip()) * g)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (polynomials in
/// `x, y`), sorted by leading monomial.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (ei, _) = leading(&basis[i]).expect("nonzero");
        let (ej, _) = leading(&basis[j]).expect("nonzero");
        if ei.iter().zip(&ej).all(|(a, b)| a.min(b).is_zero()) {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            basis.push(monic(&r));
            let k = basis.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimize, then interreduce
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (eg, _) = leading(g).expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let (eh, _) = leading(h).expect("nonzero");
            j != i && divides(&eh, &eg) && (eh != eg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let (e, c) = leading(&minimal[i]).expect("nonzero");
            let tail = &minimal[i] - &Poly::monomial(e.clone(), c);
            monic(&(Poly::monomial(e, Rat::one()) + reduce(&tail, &others)))
        })
        .collect();
    reduced.sort_by(|a, b| {
        lex(
            &leading(a).expect("nonzero").0,
            &leading(b).expect("nonzero").0,
        )
    });
    reduced
}

pub fn leading_exponents(p: &Poly) -> Option<Vec<u32>> {
    leading(p).map(|(e, _)| e)
}
