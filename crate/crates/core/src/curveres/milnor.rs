use std::collections::BTreeMap;

use num_traits::Zero;

use super::poly::Poly;
use super::CurveError;
use crate::ering::Rat;

const FIRST_TRUNCATION: u32 = 4;
const MAX_TRUNCATION: u32 = 64;

/// `dim Q[x,y]/(f_x, f_y, x^K, y^K)`.
pub fn truncated_milnor_dimension(f: &Poly, k: u32) -> usize {
    let gens = [f.derivative(0), f.derivative(1)];
    let index = |e: &[u32]| (e[0] * k + e[1]) as usize;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
    for g in &gens {
        for a in 0..k {
            for b in 0..k {
                let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
                for (e, c) in g.terms() {
                    let (i, j) = (e[0] + a, e[1] + b);
                    if i < k && j < k {
                        row.insert(index(&[i, j]), c.clone());
                    }
                }
                insert_row(&mut pivots, row);
            }
        }
    }
    (k * k) as usize - pivots.len()
}

/// Reduces `row` against the echelon rows and records it if independent.
fn insert_row(pivots: &mut BTreeMap<usize, BTreeMap<usize, Rat>>, mut row: BTreeMap<usize, Rat>) {
    while let Some((&lead, c)) = row.iter().next() {
        let Some(p) = pivots.get(&lead) else {
            let c = c.clone();
            for v in row.values_mut() {
                *v /= &c;
            }
            pivots.insert(lead, row);
            return;
        };
        let c = c.clone();
        for (col, v) in p {
            let entry = row.entry(*col).or_insert_with(Rat::zero);
            *entry -= &c * v;
            if entry.is_zero() {
                row.remove(col);
            }
        }
    }
}

/// Milnor number at the origin as the dimension of the local algebra,
/// doubling the truncation until two consecutive values agree.
pub fn milnor_oracle(f: &Poly) -> Result<usize, CurveError> {
    let mut k = FIRST_TRUNCATION;
    let mut prev = truncated_milnor_dimension(f, k);
    loop {
        k *= 2;
        if k > MAX_TRUNCATION {
            return Err(CurveError::NonIsolated);
        }
        let next = truncated_milnor_dimension(f, k);
        if next == prev {
            return Ok(next);
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curveres::parse::parse_poly;

    fn mu(s: &str) -> Result<usize, CurveError> {
        milnor_oracle(&parse_poly(s, &["x", "y"]).unwrap())
    }

    #[test]
    fn classical_values() {
        assert_eq!(mu("y^2 - x^3").unwrap(), 2);
        assert_eq!(mu("x^2 + y^2").unwrap(), 1);
        assert_eq!(mu("x^3 - y^3").unwrap(), 4);
        assert_eq!(mu("y^2 - x^7").unwrap(), 6);
        assert_eq!(mu("y^3 - x^5").unwrap(), 8);
        assert_eq!(mu("y - x^2").unwrap(), 0);
    }

    #[test]
    fn non_isolated_rejected() {
        assert!(matches!(mu("y^2"), Err(CurveError::NonIsolated)));
        assert!(matches!(mu("x^2*y^2"), Err(CurveError::NonIsolated)));
    }
}
