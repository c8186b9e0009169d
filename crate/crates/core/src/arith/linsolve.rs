//! Gaussian elimination over an exact field.

use super::ring::Field;

/// Affine solution set `particular + span(nullspace)` of a linear system.
#[derive(Clone, Debug)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub nullspace: Vec<Vec<F>>,
}

/// Solves `rows * v = rhs`. Returns `None` when the system is inconsistent.
///
/// Free variables are set to zero in the particular solution; each nullspace
/// vector has exactly one free variable equal to one.
pub fn solve<F: Field>(
    mut rows: Vec<Vec<F>>,
    mut rhs: Vec<F>,
    ncols: usize,
) -> Option<Solution<F>> {
    let nrows = rows.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][col].inverse();
        for c in col..ncols {
            rows[r][c] = rows[r][c].times(&inv);
        }
        rhs[r] = rhs[r].times(&inv);
        for i in 0..nrows {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for c in col..ncols {
                let t = f.times(&rows[r][c]);
                rows[i][c] = rows[i][c].minus(&t);
            }
            let t = f.times(&rhs[r]);
            rhs[i] = rhs[i].minus(&t);
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|b| !b.is_zero()) {
        return None;
    }
    let mut particular = vec![F::zero(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        particular[pc] = rhs[i].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); ncols];
            v[fc] = F::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[i][fc].negate();
            }
            v
        })
        .collect();
    Some(Solution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{rat, Rational, Ring};
    use num_traits::Zero;

    fn r(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn unique_solution() {
        let s = solve(
            vec![vec![r(2), r(1)], vec![r(1), r(-1)]],
            vec![r(5), r(1)],
            2,
        )
        .unwrap();
        assert_eq!(s.particular, vec![r(2), r(1)]);
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn rank_deficient_has_nullspace() {
        let s = solve(vec![vec![r(1), r(2), r(3)]], vec![r(6)], 3).unwrap();
        assert_eq!(s.nullspace.len(), 2);
        for v in &s.nullspace {
            let dot = v[0].plus(&v[1].times(&r(2))).plus(&v[2].times(&r(3)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inconsistent_is_none() {
        assert!(solve(vec![vec![r(1)], vec![r(1)]], vec![r(1), r(2)], 1).is_none());
    }
}
