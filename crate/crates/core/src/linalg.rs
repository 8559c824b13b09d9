//! Small exact linear algebra over the rationals.

use num_rational::Ratio;

pub type Q = Ratio<i64>;

/// Row-reduces `m` in place and returns its rank.
fn row_reduce(m: &mut [Vec<Q>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Q::from(0)) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for v in m[rank].iter_mut() {
            *v /= pivot;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != Q::from(0) {
                let f = m[r][c];
                let (top, rest) = if r < rank {
                    let (a, b) = m.split_at_mut(rank);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top.iter()) {
                    *x -= f * *y;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of an integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from(x)).collect())
        .collect();
    row_reduce(&mut m, cols)
}

/// Solves `Σ_j c_j columns[j] = rhs` exactly. Returns `None` if the system is
/// inconsistent; the columns must be linearly independent.
pub fn solve_columns(columns: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let k = columns.len();
    let n = rhs.len();
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let r = row_reduce(&mut m, k + 1);
    // A pivot in the augmented column means inconsistency.
    for row in m.iter().take(r) {
        if let Some(lead) = row.iter().position(|x| *x != Q::from(0)) {
            if lead == k {
                return None;
            }
        }
    }
    assert_eq!(r, k, "columns are not linearly independent");
    let mut sol = vec![Q::from(0); k];
    for row in m.iter().take(r) {
        let lead = row.iter().position(|x| *x != Q::from(0)).unwrap();
        sol[lead] = row[k];
    }
    Some(sol)
}

/// Integer version of [`solve_columns`] returning an integral solution if one exists.
pub fn solve_integral(columns: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let cols: Vec<Vec<Q>> = columns
        .iter()
        .map(|c| c.iter().map(|&x| Q::from(x)).collect())
        .collect();
    let rhs: Vec<Q> = rhs.iter().map(|&x| Q::from(x)).collect();
    let sol = solve_columns(&cols, &rhs)?;
    sol.iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 2], vec![2, 5], vec![3, 7]]), 2);
    }

    #[test]
    fn solves() {
        // columns (2,-1,0) and (-1,2,0); rhs = 1*(2,-1,0) + 1*(-1,2,0).
        let cols = vec![vec![2, -1, 0], vec![-1, 2, 0]];
        assert_eq!(solve_integral(&cols, &[1, 1, 0]), Some(vec![1, 1]));
        assert_eq!(solve_integral(&cols, &[1, 0, 0]), None); // 2/3, 1/3
        assert_eq!(solve_integral(&cols, &[0, 0, 1]), None); // inconsistent
        assert_eq!(solve_integral(&[], &[0, 0]), Some(vec![]));
        assert_eq!(solve_integral(&[], &[1, 0]), None);
    }
}
