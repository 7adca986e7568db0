use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::{math, CoreError, Result};

/// Relative tolerance for affine-dependence tests.
const GENERAL_POSITION_TOL: f64 = 1e-10;

/// A finite set of pairwise distinct points in `R^dim`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    general_position: bool,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(CoreError::Degenerate("use PointSet::empty for an empty set".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(CoreError::Degenerate("points must have dimension >= 1".into()));
        }
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in &points {
            if p.len() != dim {
                return Err(CoreError::DimensionMismatch { expected: dim, found: p.len() });
            }
            if let Some(&v) = p.iter().find(|v| !v.is_finite()) {
                return Err(CoreError::NonFinite(v));
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, coords)
    }

    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || coords.len() % dim != 0 {
            return Err(CoreError::Degenerate(format!("{} coordinates do not form {dim}-dimensional points", coords.len())));
        }
        let set = Self { dim, coords, general_position: false };
        for i in 0..set.len() {
            for j in 0..i {
                if set.point(i) == set.point(j) {
                    return Err(CoreError::Degenerate(format!("points {j} and {i} coincide")));
                }
            }
        }
        Ok(set)
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, coords: Vec::new(), general_position: true }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn index_of(&self, x: &[f64]) -> Option<usize> {
        self.iter().position(|p| p == x)
    }

    pub fn general_position(&self) -> bool {
        self.general_position
    }

    /// Points at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            if i >= self.len() {
                return Err(CoreError::Domain(format!("point index {i} out of range")));
            }
            coords.extend_from_slice(self.point(i));
        }
        if indices.is_empty() {
            return Ok(Self::empty(self.dim));
        }
        let mut s = Self::from_flat(self.dim, coords)?;
        s.general_position = self.general_position;
        Ok(s)
    }

    /// Largest absolute coordinate, at least 1.
    pub(crate) fn scale(&self) -> f64 {
        self.coords.iter().fold(1.0f64, |m, v| m.max(v.abs()))
    }

    /// True iff no `dim + 1` points are affinely dependent. Only decidable
    /// here for `dim <= 3`; higher dimensions return an error.
    pub fn is_in_general_position(&self) -> Result<bool> {
        if self.dim > 3 {
            return Err(CoreError::Unsupported("general-position check only implemented for dim <= 3"));
        }
        // Independence is inherited by subsets, so testing every subset of
        // size min(n, dim + 1) covers all smaller ones.
        let size = (self.dim + 1).min(self.len());
        if size <= 1 {
            return Ok(true);
        }
        let scale = self.scale();
        let mut ok = true;
        for_each_combination(self.len(), size, |idx| {
            if ok && !self.affinely_independent(idx, scale) {
                ok = false;
            }
        });
        Ok(ok)
    }

    fn affinely_independent(&self, idx: &[usize], scale: f64) -> bool {
        let d = self.dim;
        let r = idx.len() - 1;
        if r == 0 {
            return true;
        }
        let tol = GENERAL_POSITION_TOL * libm::pow(scale, r as f64);
        let base = self.point(idx[0]);
        let diffs: Vec<Vec<f64>> = idx[1..]
            .iter()
            .map(|&i| self.point(i).iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        if r == d {
            let mut m: Vec<f64> = diffs.iter().flatten().copied().collect();
            return math::determinant(&mut m, d).abs() > tol;
        }
        // fewer difference vectors than dimensions: Gram determinant
        let mut gram = vec![0.0; r * r];
        for a in 0..r {
            for b in 0..r {
                gram[a * r + b] = diffs[a].iter().zip(&diffs[b]).map(|(x, y)| x * y).sum();
            }
        }
        math::determinant(&mut gram, r).abs() > tol * tol
    }

    /// Marks the set as being in general position after checking it.
    pub fn with_general_position(mut self) -> Result<Self> {
        if !self.is_in_general_position()? {
            return Err(CoreError::Degenerate("points are not in general position".into()));
        }
        self.general_position = true;
        Ok(self)
    }

    /// `n` points uniform in `[lo, hi]^dim`.
    pub fn random_uniform<R: Rng + ?Sized>(n: usize, dim: usize, lo: f64, hi: f64, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Ok(Self::empty(dim));
        }
        let coords = (0..n * dim).map(|_| rng.gen_range(lo..=hi)).collect();
        Self::from_flat(dim, coords)
    }

    /// `n` uniform points in `[0, 1]^dim`, redrawn until in general position.
    pub fn random_general_position<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> Result<Self> {
        for _ in 0..64 {
            if let Ok(s) = Self::random_uniform(n, dim, 0.0, 1.0, rng).and_then(Self::with_general_position) {
                return Ok(s);
            }
        }
        Err(CoreError::Degenerate(format!("could not draw {n} points in general position")))
    }

    /// `(t, t^2, ..., t^dim)` for `n` evenly spaced `t` in `[-1, 1]`. Any
    /// `dim + 1` of these are affinely independent (Vandermonde).
    pub fn moment_curve(n: usize, dim: usize) -> Result<Self> {
        if n == 0 {
            return Ok(Self::empty(dim));
        }
        let mut coords = Vec::with_capacity(n * dim);
        for i in 0..n {
            let t = if n == 1 { 0.0 } else { -1.0 + 2.0 * i as f64 / (n - 1) as f64 };
            let mut p = 1.0;
            for _ in 0..dim {
                p *= t;
                coords.push(p);
            }
        }
        let mut s = Self::from_flat(dim, coords)?;
        s.general_position = true;
        Ok(s)
    }

    /// Vertices of a regular `n`-gon on the unit circle.
    pub fn convex_polygon(n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(Self::empty(2));
        }
        let step = 2.0 * core::f64::consts::PI / n as f64;
        let coords = (0..n)
            .flat_map(|i| {
                let a = step * i as f64 + 0.1;
                [math::cos(a), math::sin(a)]
            })
            .collect();
        let mut s = Self::from_flat(2, coords)?;
        s.general_position = true;
        Ok(s)
    }

    /// The first `n` of: origin, then the unit vectors `e_1..e_dim`.
    pub fn simplex_vertices(n: usize, dim: usize) -> Result<Self> {
        if n > dim + 1 {
            return Err(CoreError::Domain(format!("a simplex in R^{dim} has only {} vertices", dim + 1)));
        }
        if n == 0 {
            return Ok(Self::empty(dim));
        }
        let mut coords = vec![0.0; n * dim];
        for i in 1..n {
            coords[i * dim + (i - 1)] = 1.0;
        }
        let mut s = Self::from_flat(dim, coords)?;
        s.general_position = true;
        Ok(s)
    }

    /// `n` distinct points drawn from the integer grid `{0..side-1}^dim`.
    pub fn random_grid<R: Rng + ?Sized>(n: usize, dim: usize, side: usize, rng: &mut R) -> Result<Self> {
        let total = side.checked_pow(dim as u32).unwrap_or(usize::MAX);
        if n > total {
            return Err(CoreError::Domain(format!("grid has only {total} points")));
        }
        if n == 0 {
            return Ok(Self::empty(dim));
        }
        let picks = rand::seq::index::sample(rng, total, n);
        let mut coords = Vec::with_capacity(n * dim);
        for mut cell in picks.iter() {
            for _ in 0..dim {
                coords.push((cell % side) as f64);
                cell /= side;
            }
        }
        Self::from_flat(dim, coords)
    }
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
