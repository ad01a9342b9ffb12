use std::collections::HashMap;

use super::form_matrix::FormMatrix;
use crate::ce::AlgForm;
use crate::error::Result;
use crate::scalar::Scalar;

/// Perfect matchings of `0..m` as `(sign, pairs)`, with the sign of the
/// permutation `(i_1 j_1 i_2 j_2 ...)`.
fn matchings(m: usize) -> Vec<(bool, Vec<(usize, usize)>)> {
    fn rec(rest: &[usize], negative: bool, acc: &mut Vec<(usize, usize)>, out: &mut Vec<(bool, Vec<(usize, usize)>)>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push((negative, acc.clone()));
            return;
        };
        for (pos, &j) in tail.iter().enumerate() {
            let remaining: Vec<usize> = tail.iter().copied().filter(|&x| x != j).collect();
            acc.push((first, j));
            // Moving j next to `first` crosses `pos` elements.
            rec(&remaining, negative ^ (pos % 2 == 1), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..m).collect();
    rec(&all, false, &mut Vec::new(), &mut out);
    out
}

/// Pfaffian of an antisymmetric matrix of even forms. Sums over perfect
/// matchings up to size 8 and expands along the first row beyond that.
pub fn pfaffian<S: Scalar>(a: &FormMatrix<S>) -> Result<AlgForm<S>> {
    let m = a.size();
    let (rank, nvars) = (a.rank(), a.nvars());
    if m % 2 == 1 {
        return Ok(AlgForm::zero(rank, nvars));
    }
    if m <= 8 {
        let mut acc = AlgForm::zero(rank, nvars);
        for (negative, pairs) in matchings(m) {
            let mut term = AlgForm::constant(1, rank, nvars);
            for (i, j) in pairs {
                term = term.wedge(a.entry(i, j))?;
                if term.is_zero() {
                    break;
                }
            }
            acc = if negative { acc.sub(&term)? } else { acc.add(&term)? };
        }
        return Ok(acc);
    }
    let mut memo = HashMap::new();
    expand(a, (1u64 << m) - 1, &mut memo)
}

fn expand<S: Scalar>(a: &FormMatrix<S>, mask: u64, memo: &mut HashMap<u64, AlgForm<S>>) -> Result<AlgForm<S>> {
    if mask == 0 {
        return Ok(AlgForm::constant(1, a.rank(), a.nvars()));
    }
    if let Some(v) = memo.get(&mask) {
        return Ok(v.clone());
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut acc = AlgForm::zero(a.rank(), a.nvars());
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = a.entry(first, j);
        if !entry.is_zero() {
            let sub = expand(a, rest & !(1 << j), memo)?;
            let term = entry.wedge(&sub)?;
            acc = if pos % 2 == 1 { acc.sub(&term)? } else { acc.add(&term)? };
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Poly;

    #[test]
    fn two_by_two_block() {
        let a = AlgForm::<Poly>::monomial(crate::ce::Blade::top(2), Poly::from_int(5, 0), 2);
        let m = FormMatrix::from_fn(2, 2, 0, |i, j| match (i, j) {
            (0, 1) => a.clone(),
            (1, 0) => a.neg(),
            _ => AlgForm::zero(2, 0),
        });
        assert_eq!(pfaffian(&m).unwrap(), a);
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matchings(4).len(), 3);
        assert_eq!(matchings(6).len(), 15);
        // Pf of the standard symplectic 4x4 block matrix is +1 with pairs (01)(23).
        let signs: Vec<bool> = matchings(4).iter().map(|(s, _)| *s).collect();
        assert_eq!(signs, vec![false, true, false]);
    }

    #[test]
    fn expansion_agrees_with_matchings() {
        // Constant 10x10 antisymmetric matrix; compare the two algorithms on
        // its upper-left 8x8 block padded by a standard block.
        let entry = |i: usize, j: usize| -> i64 { ((i * 7 + j * 3) % 5) as i64 - 2 };
        let build = |m: usize| {
            FormMatrix::<Poly>::from_fn(m, 0, 0, |i, j| {
                let v = match i.cmp(&j) {
                    std::cmp::Ordering::Less => entry(i, j),
                    std::cmp::Ordering::Greater => -entry(j, i),
                    std::cmp::Ordering::Equal => 0,
                };
                AlgForm::constant(v, 0, 0)
            })
        };
        let small = build(8);
        let by_matching = pfaffian(&small).unwrap();
        let by_expansion = expand(&small, (1 << 8) - 1, &mut HashMap::new()).unwrap();
        assert_eq!(by_matching, by_expansion);
        let big = build(10);
        let pf = pfaffian(&big).unwrap();
        // Pf² = det for constants.
        let det = crate::scalar::det(
            &(0..10)
                .map(|i| {
                    (0..10)
                        .map(|j| big.entry(i, j).coefficient(crate::ce::Blade::EMPTY))
                        .collect()
                })
                .collect::<Vec<Vec<Poly>>>(),
            0,
        );
        let p = pf.coefficient(crate::ce::Blade::EMPTY);
        assert_eq!(&p * &p, det);
    }
}
