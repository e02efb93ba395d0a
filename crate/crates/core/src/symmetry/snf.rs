//! Smith normal form of small integer matrices.

/// Invariant factors `d_1 | d_2 | …` of the integer matrix (rows need not
/// be square). Zero factors for rank deficiency are included at the end, up
/// to `min(rows, cols)` entries in total.
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero magnitude in the trailing block
        let Some((pr, pc)) = smallest_entry(&a, t) else {
            diag.extend(std::iter::repeat_n(0, rows.min(cols) - t));
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut done = true;
            // clear column t
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            // clear row t
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // the pivot must divide everything that remains
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            let (pr, pc) = smallest_entry(&a, t).expect("nonzero entries remain");
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn smallest_entry(a: &[Vec<i64>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &v) in row.iter().enumerate().skip(t) {
            if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `(Z/4)^2 x Z/2` style description of `⊕ Z/d` over the given factors;
/// factors equal to 1 are dropped and a zero factor is rendered as `Z`.
pub fn describe(factors: &[i64]) -> String {
    let mut nontrivial: Vec<i64> = factors.iter().copied().filter(|&d| d != 1).collect();
    if nontrivial.is_empty() {
        return "trivial".into();
    }
    // largest first, free factors leading
    nontrivial.sort_by_key(|&d| if d == 0 { i64::MIN } else { -d });
    let mut parts = Vec::new();
    let mut i = 0;
    while i < nontrivial.len() {
        let d = nontrivial[i];
        let run = nontrivial[i..].iter().take_while(|&&x| x == d).count();
        let base = if d == 0 { "Z".to_string() } else { format!("Z/{d}") };
        parts.push(match (run, d) {
            (1, 0) => base,
            (1, _) => base,
            (_, 0) => format!("Z^{run}"),
            _ => format!("({base})^{run}"),
        });
        i += run;
    }
    parts.join(" x ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_normalized() {
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(invariant_factors(&[vec![4, 0], vec![0, 6]]), vec![2, 12]);
    }

    #[test]
    fn dependent_rows_give_zero() {
        assert_eq!(invariant_factors(&[vec![1, 2], vec![2, 4]]), vec![1, 0]);
    }

    #[test]
    fn textbook_example() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(invariant_factors(&m), vec![2, 6, 12]);
    }

    #[test]
    fn descriptions() {
        assert_eq!(describe(&[1, 2, 4, 4]), "(Z/4)^2 x Z/2");
        assert_eq!(describe(&[5, 5, 5]), "(Z/5)^3");
        assert_eq!(describe(&[1, 1]), "trivial");
        assert_eq!(describe(&[3, 0]), "Z x Z/3");
    }
}
