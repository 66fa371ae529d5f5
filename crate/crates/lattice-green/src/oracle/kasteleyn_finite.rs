//! Exact finite Kasteleyn matrices on Temperleyan grids: determinants count
//! dimer covers, exact solves give inverse entries, and the matrix-tree
//! theorem supplies the spanning-tree counts they are checked against.

use crate::exact::{ExactError, ExactResult, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Complex rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn zero() -> Self {
        CRat { re: Rat::zero(), im: Rat::zero() }
    }
    pub fn one() -> Self {
        CRat { re: Rat::one(), im: Rat::zero() }
    }
    pub fn from_ints(re: i64, im: i64) -> Self {
        CRat { re: crate::exact::rat(re, 1), im: crate::exact::rat(im, 1) }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn add(&self, o: &CRat) -> CRat {
        CRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &CRat) -> CRat {
        CRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn mul(&self, o: &CRat) -> CRat {
        CRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    pub fn inv(&self) -> ExactResult<CRat> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return Err(ExactError::DivideByZero);
        }
        Ok(CRat { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn neg(&self) -> CRat {
        CRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    pub fn abs2(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
}

/// Doubled grid `{-m..m}^2` (so the tree grid is `(m+1) x (m+1)` on even-even
/// vertices) with base Kasteleyn weights east 1, west -1, north i, south -i
/// from each white vertex. No zipper: the removed tree vertex is chosen
/// incident to the outer face.
pub struct TemperleyGrid {
    pub m: i64,
    pub removed: Vec<(i64, i64)>,
    pub whites: Vec<(i64, i64)>,
    pub blacks: Vec<(i64, i64)>,
    windex: HashMap<(i64, i64), usize>,
    bindex: HashMap<(i64, i64), usize>,
}

impl TemperleyGrid {
    pub fn new(m: i64, removed: Vec<(i64, i64)>) -> Self {
        let mut whites = Vec::new();
        let mut blacks = Vec::new();
        for x in -m..=m {
            for y in -m..=m {
                if removed.contains(&(x, y)) {
                    continue;
                }
                if (x + y).rem_euclid(2) == 0 {
                    blacks.push((x, y));
                } else {
                    whites.push((x, y));
                }
            }
        }
        let windex = whites.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let bindex = blacks.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        TemperleyGrid { m, removed, whites, blacks, windex, bindex }
    }

    pub fn weight(&self, w: (i64, i64), b: (i64, i64)) -> CRat {
        match (b.0 - w.0, b.1 - w.1) {
            (1, 0) => CRat::from_ints(1, 0),
            (-1, 0) => CRat::from_ints(-1, 0),
            (0, 1) => CRat::from_ints(0, 1),
            (0, -1) => CRat::from_ints(0, -1),
            _ => CRat::zero(),
        }
    }

    /// Dense Kasteleyn matrix, rows indexed by whites, columns by blacks.
    pub fn matrix(&self) -> Vec<Vec<CRat>> {
        let mut k = vec![vec![CRat::zero(); self.blacks.len()]; self.whites.len()];
        for (wi, &w) in self.whites.iter().enumerate() {
            for d in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                let b = (w.0 + d.0, w.1 + d.1);
                if b.0.abs() > self.m || b.1.abs() > self.m || self.removed.contains(&b) {
                    continue;
                }
                k[wi][self.bindex[&b]] = self.weight(w, b);
            }
        }
        k
    }

    pub fn white_index(&self, w: (i64, i64)) -> Option<usize> {
        self.windex.get(&w).copied()
    }
    pub fn black_index(&self, b: (i64, i64)) -> Option<usize> {
        self.bindex.get(&b).copied()
    }
}

/// Determinant over the complex rationals by Gaussian elimination.
pub fn det_crat(mut m: Vec<Vec<CRat>>) -> ExactResult<CRat> {
    let n = m.len();
    if n == 0 {
        return Ok(CRat::one());
    }
    if m[0].len() != n {
        return Err(ExactError::Parse("determinant needs a square matrix".into()));
    }
    let mut det = CRat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(CRat::zero());
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let piv = m[col][col].clone();
        det = det.mul(&piv);
        let inv = piv.inv()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for c in col..n {
                let t = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    Ok(det)
}

/// Solve `K y = rhs` exactly over the complex rationals.
pub fn solve_crat(mut m: Vec<Vec<CRat>>, mut rhs: Vec<Vec<CRat>>) -> ExactResult<Vec<Vec<CRat>>> {
    let n = m.len();
    let k = rhs.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Err(ExactError::Parse("singular system".into()));
        };
        m.swap(p, col);
        for rv in rhs.iter_mut() {
            rv.swap(p, col);
        }
        let inv = m[col][col].inv()?;
        for c in col..n {
            m[col][c] = m[col][c].mul(&inv);
        }
        for rv in rhs.iter_mut() {
            rv[col] = rv[col].mul(&inv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..n {
                let t = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
            for rv in rhs.iter_mut() {
                let t = f.mul(&rv[col]);
                rv[r] = rv[r].sub(&t);
            }
        }
    }
    let _ = k;
    Ok(rhs)
}

/// Number of spanning trees of the `n x n` grid graph, by the matrix-tree
/// theorem (integer determinant of a reduced Laplacian).
pub fn grid_tree_count(n: usize) -> BigInt {
    let idx = |r: usize, c: usize| r * n + c;
    let total = n * n;
    // reduced by removing the last vertex
    let dim = total - 1;
    let mut m = vec![vec![Rat::zero(); dim]; dim];
    for r in 0..n {
        for c in 0..n {
            let i = idx(r, c);
            if i >= dim {
                continue;
            }
            let mut deg = 0i64;
            for (dr, dc) in [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)] {
                let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                if nr < 0 || nc < 0 || nr >= n as i64 || nc >= n as i64 {
                    continue;
                }
                deg += 1;
                let j = idx(nr as usize, nc as usize);
                if j < dim {
                    m[i][j] = crate::exact::rat(-1, 1);
                }
            }
            m[i][i] = crate::exact::rat(deg, 1);
        }
    }
    let d = det_rat(m);
    assert!(d.denom().is_one());
    d.numer().abs()
}

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det *= &piv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &piv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Exact Dirichlet Green's function of a grid-like graph given as sparse
/// integer rows (degree on the diagonal), solved over the rationals.
pub fn exact_graph_green(
    rows: &[Vec<(usize, i64)>],
    source: usize,
) -> Vec<Rat> {
    let n = rows.len();
    let mut m = vec![vec![CRat::zero(); n]; n];
    for (r, row) in rows.iter().enumerate() {
        for &(c, w) in row {
            m[r][c] = CRat::from_ints(w, 0);
        }
    }
    let mut rhs = vec![vec![CRat::zero(); n]];
    rhs[0][source] = CRat::one();
    let sol = solve_crat(m, rhs).expect("nonsingular graph Laplacian");
    sol[0].iter().map(|c| c.re.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_counts() {
        assert_eq!(grid_tree_count(2), BigInt::from(4));
        assert_eq!(grid_tree_count(3), BigInt::from(192));
        // 4x4 grid: known value 100352.
        assert_eq!(grid_tree_count(4), BigInt::from(100352));
    }

    /// On the corner-rooted Temperleyan region, every inverse-Kasteleyn entry
    /// equals the Green-difference assembly used in the infinite-volume
    /// kernels: sum over same-sublattice neighbors b' of w of
    /// conj(K(w,b')) G(b', b), with G the rooted tree-grid (or dual-grid)
    /// Green's function.
    #[test]
    fn temperley_green_difference_identity() {
        let m = 4i64; // 9x9 doubled grid, 5x5 tree grid
        let v0 = (-m, -m);
        let grid = TemperleyGrid::new(m, vec![v0]);
        let k = grid.matrix();
        let n = grid.whites.len();
        // Tree-grid Green function with Dirichlet at v0 (even-even sublattice).
        let tree_pts: Vec<(i64, i64)> = (-2..=2)
            .flat_map(|x| (-2..=2).map(move |y| (2 * x, 2 * y)))
            .filter(|&p| p != v0)
            .collect();
        let tidx: std::collections::HashMap<_, _> =
            tree_pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let tree_rows: Vec<Vec<(usize, i64)>> = tree_pts
            .iter()
            .map(|&(x, y)| {
                let mut row = Vec::new();
                let mut deg = 0;
                for d in [(2i64, 0i64), (-2, 0), (0, 2), (0, -2)] {
                    let q = (x + d.0, y + d.1);
                    if q.0.abs() <= 2 * 2 && q.1.abs() <= 4 {
                        deg += 1;
                        if let Some(&j) = tidx.get(&q) {
                            row.push((j, -1));
                        }
                    }
                }
                row.push((tidx[&(x, y)], deg));
                row
            })
            .collect();
        // Dual-grid Green function with Dirichlet at the outer face
        // (odd-odd sublattice, 4x4).
        let dual_pts: Vec<(i64, i64)> = (-2..=1)
            .flat_map(|x| (-2..=1).map(move |y| (2 * x + 1, 2 * y + 1)))
            .collect();
        let didx: std::collections::HashMap<_, _> =
            dual_pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let dual_rows: Vec<Vec<(usize, i64)>> = dual_pts
            .iter()
            .map(|&(x, y)| {
                let mut row = vec![(didx[&(x, y)], 4)];
                for d in [(2i64, 0i64), (-2, 0), (0, 2), (0, -2)] {
                    let q = (x + d.0, y + d.1);
                    if let Some(&j) = didx.get(&q) {
                        row.push((j, -1));
                    }
                }
                row
            })
            .collect();
        // Direct inverse entries for two whites.
        for &w in &[(1i64, 0i64), (0i64, -1i64)] {
            let mut rhs = vec![vec![CRat::zero(); n]];
            rhs[0][grid.white_index(w).unwrap()] = CRat::one();
            let sol = solve_crat(k.clone(), rhs).unwrap();
            for &b in &[(0i64, 0i64), (2, 0), (1, 1), (-1, 1)] {
                let direct = sol[0][grid.black_index(b).unwrap()].clone();
                // Green-difference assembly.
                let even = b.0.rem_euclid(2) == 0;
                let mut acc = CRat::zero();
                for d in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                    let bp = (w.0 + d.0, w.1 + d.1);
                    if bp.0.abs() > m || bp.1.abs() > m {
                        continue;
                    }
                    if (bp.0.rem_euclid(2) == 0) != even {
                        continue;
                    }
                    let g = if even {
                        if bp == v0 {
                            Rat::zero()
                        } else {
                            let col = exact_graph_green(&tree_rows, tidx[&bp]);
                            col[tidx[&b]].clone()
                        }
                    } else {
                        let col = exact_graph_green(&dual_rows, didx[&bp]);
                        col[didx[&b]].clone()
                    };
                    // conj(K(w, bp)) * g
                    let kw = grid.weight(w, bp);
                    let conj = CRat { re: kw.re.clone(), im: -kw.im.clone() };
                    acc = acc.add(&conj.mul(&CRat { re: g, im: Rat::zero() }));
                }
                assert_eq!(direct, acc, "w={w:?} b={b:?}");
            }
        }
    }

    #[test]
    fn temperley_bijection_count() {
        // Dimer covers of the (2n-1)x(2n-1) grid minus one corner equal the
        // spanning trees of the n x n grid.
        for n in [2i64, 3] {
            let m = n - 1;
            let grid = TemperleyGrid::new(m, vec![(-m, -m)]);
            let k = grid.matrix();
            let d = det_crat(k).unwrap();
            let count = d.abs2();
            let trees = grid_tree_count(n as usize);
            assert_eq!(count, Rat::from_integer(&trees * &trees), "n={n}");
        }
    }
}
