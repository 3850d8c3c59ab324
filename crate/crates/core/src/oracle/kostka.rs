//! Kostka-Foulkes polynomials `K_{lambda mu}(t)` from the charge statistic on
//! semistandard tableaux.

use crate::partitions::Partition;
use crate::qpoly::Poly;

/// Semistandard tableaux of shape `shape` and content `content`, rows of letters `1..`.
pub fn semistandard_tableaux(shape: &Partition, content: &Partition) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if shape.size() != content.size() {
        return out;
    }
    // place letters 1, 2, ... in turn as horizontal strips
    fn go(shape: &[usize], content: &[usize], letter: usize, t: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if letter > content.len() {
            if t.iter().zip(shape).all(|(r, &s)| r.len() == s) {
                out.push(t.clone());
            }
            return;
        }
        let need = content[letter - 1];
        strip(shape, content, letter, need, 0, t, out);
    }
    fn strip(
        shape: &[usize],
        content: &[usize],
        letter: usize,
        left: usize,
        row: usize,
        t: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if left == 0 {
            go(shape, content, letter + 1, t, out);
            return;
        }
        if row >= shape.len() {
            return;
        }
        // horizontal strip: new cells in this row may not sit below cells added now
        let cur = t[row].len();
        let above = if row == 0 { usize::MAX } else { t[row - 1].iter().filter(|&&x| x < letter).count() };
        let max_add = shape[row].saturating_sub(cur).min(above.saturating_sub(cur)).min(left);
        for k in (0..=max_add).rev() {
            t[row].extend(std::iter::repeat_n(letter, k));
            strip(shape, content, letter, left - k, row + 1, t, out);
            let len = t[row].len();
            t[row].truncate(len - k);
        }
    }
    let mut t = vec![Vec::new(); shape.len()];
    go(shape.parts(), content.parts(), 1, &mut t, &mut out);
    out
}

/// Reading word: rows from the bottom up, each left to right.
pub fn reading_word(t: &[Vec<usize>]) -> Vec<usize> {
    t.iter().rev().flatten().copied().collect()
}

/// Charge of a word whose content is a partition.
pub fn charge(word: &[usize]) -> usize {
    let mut used = vec![false; word.len()];
    let mut total = 0;
    loop {
        // extract one standard subword: 1, 2, ... scanning right to left cyclically
        let Some(start) = (0..word.len()).rev().find(|&i| !used[i] && word[i] == 1) else {
            return total;
        };
        used[start] = true;
        let mut pos = start;
        let mut index = 0;
        let mut letter = 2;
        loop {
            let left = (0..pos).rev().find(|&i| !used[i] && word[i] == letter);
            let next = match left {
                Some(i) => i,
                None => match (pos..word.len()).rev().find(|&i| !used[i] && word[i] == letter) {
                    Some(i) => {
                        index += 1;
                        i
                    }
                    None => break,
                },
            };
            used[next] = true;
            total += index;
            pos = next;
            letter += 1;
        }
    }
}

/// `K_{lambda mu}(t) = sum over SSYT T of shape lambda, content mu, of t^charge(T)`.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Poly {
    let mut coeffs: Vec<i64> = Vec::new();
    for t in semistandard_tableaux(lambda, mu) {
        let c = charge(&reading_word(&t));
        if coeffs.len() <= c {
            coeffs.resize(c + 1, 0);
        }
        coeffs[c] += 1;
    }
    Poly::from_ints(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_kostka_foulkes() {
        assert_eq!(kostka_foulkes(&p("2"), &p("1,1")), Poly::from_ints(&[0, 1]));
        assert_eq!(kostka_foulkes(&p("2,1"), &p("1,1,1")), Poly::from_ints(&[0, 1, 1]));
        assert_eq!(kostka_foulkes(&p("3"), &p("1,1,1")), Poly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(kostka_foulkes(&p("2,2"), &p("2,1,1")), Poly::from_ints(&[0, 1]));
        assert_eq!(kostka_foulkes(&p("3,1"), &p("2,2")), Poly::from_ints(&[0, 1]));
        assert!(kostka_foulkes(&p("1,1"), &p("2")).is_zero());
        for n in 1..=6 {
            for l in crate::partitions::partitions_of(n) {
                assert_eq!(kostka_foulkes(&l, &l), Poly::one());
            }
        }
    }

    #[test]
    fn kostka_numbers_at_one() {
        // K_{lambda,(1^n)}(1) = number of standard tableaux
        let f = |s: &str| kostka_foulkes(&p(s), &Partition::column(p(s).size())).eval(&num_rational::BigRational::from_integer(1.into()));
        assert_eq!(f("3,2"), num_rational::BigRational::from_integer(5.into()));
        assert_eq!(f("3,2,1"), num_rational::BigRational::from_integer(16.into()));
    }
}
