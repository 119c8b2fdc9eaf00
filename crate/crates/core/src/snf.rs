//! Smith normal form over the integers, tracking the row transform.
//!
//! For an `r × c` matrix `M` we compute a unimodular `U` and the diagonal
//! `d_1 | d_2 | … ` with `U · M · V = diag(d)` for some unimodular `V`.
//! Only `U` is kept: it carries `Z^r / im(M)` onto `⊕ Z/d_i`.

pub(crate) struct SmithForm {
    /// Diagonal entries, one per row (zero when the row is not pivoted).
    pub diag: Vec<i128>,
    /// Row transform, `r × r`.
    pub left: Vec<Vec<i128>>,
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn smith_normal_form(matrix: &[Vec<i128>]) -> SmithForm {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = matrix.to_vec();
    let mut u: Vec<Vec<i128>> = (0..rows).map(|i| (0..rows).map(|j| i128::from(i == j)).collect()).collect();

    for t in 0..rows.min(cols) {
        loop {
            // Pivot: smallest nonzero magnitude in the trailing block.
            let mut pivot = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && pivot.is_none_or(|(pi, pj): (usize, usize)| m[i][j].abs() < m[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }

            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                    for j in 0..rows {
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
    }

    let mut diag = vec![0i128; rows];
    for (t, d) in diag.iter_mut().enumerate().take(rows.min(cols)) {
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        *d = m[t][t];
    }
    SmithForm { diag, left: u }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_a_divisibility_chain() {
        let f = smith_normal_form(&[vec![4, 0], vec![0, 6]]);
        assert_eq!(f.diag, vec![2, 12]);
        let f = smith_normal_form(&[vec![4, 0], vec![0, 2]]);
        assert_eq!(f.diag, vec![2, 4]);
    }

    #[test]
    fn quotient_relations() {
        // Z^1 / <4, 2> = Z/2
        let f = smith_normal_form(&[vec![4, 2]]);
        assert_eq!(f.diag, vec![2]);
    }
}
