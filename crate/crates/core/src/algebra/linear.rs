use super::rational::Rational;

/// Reduced row echelon form: the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).1.len()
}

/// Whether `v` lies in the span of rows already in reduced echelon form.
pub fn in_row_space(echelon: &[Vec<Rational>], pivots: &[usize], v: &[Rational]) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in echelon.iter().zip(pivots) {
        if !w[p].is_zero() {
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &(&f * y);
            }
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// A basis of `{x : rows * x = 0}` in `Q^ncols`.
pub fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (e, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &p) in e.iter().zip(&pivots) {
                x[p] = -&row[f];
            }
            x
        })
        .collect()
}

pub fn to_rationals(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}
