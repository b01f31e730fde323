//! Matrix-free `H(s) = A(s) sum_i X_i + B(s) H_p`.
//!
//! Basis state `x` has spin `z_i = +1` when bit `i` is clear and `-1` when
//! it is set. The driver flips one bit, so `(H v)[x] = B E_p(x) v[x] +
//! A sum_i v[x ^ 2^i]`. Single vectors are processed in cache-sized chunks:
//! low bits are butterflies inside a chunk, high bits pair whole chunks.
//! Blocks of eight or more vectors gather neighbor rows instead.

use super::{IsingInstance, Schedule};
use crate::error::{Error, Result};

/// Largest spin count for which a state vector is ever allocated.
pub const MAX_SPINS: usize = 33;

const CHUNK_VALUES: usize = 2048;
const GATHER_COLS: usize = 8;

/// `H(s)` for a fixed instance and anneal point.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    n: usize,
    a: f64,
    b: f64,
    diag: Vec<f64>,
}

impl Hamiltonian {
    pub fn new(inst: &IsingInstance, s: f64, sched: &Schedule) -> Result<Self> {
        let (a, b) = sched.coefficients(s)?;
        Hamiltonian::from_coefficients(inst, a, b)
    }

    pub fn from_coefficients(inst: &IsingInstance, a: f64, b: f64) -> Result<Self> {
        let mut diag = inst.diagonal()?;
        for d in &mut diag {
            *d *= b;
        }
        Ok(Hamiltonian {
            n: inst.n(),
            a,
            b,
            diag,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Driver coefficient `A(s)`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Problem coefficient `B(s)`.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Diagonal `B(s) E_p(x)`.
    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    /// Bounds `[lo, hi]` on the spectrum (Gershgorin).
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let r = self.a.abs() * self.n as f64;
        let lo = self.diag.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo - r, hi + r)
    }

    /// `out = H v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        self.apply_block(v, out, 1);
    }

    /// `out = H V` for `cols` vectors stored row-major: entry `(x, c)` at
    /// `x * cols + c`.
    pub fn apply_block(&self, v: &[f64], out: &mut [f64], cols: usize) {
        let dim = self.dim();
        assert_eq!(v.len(), dim * cols);
        assert_eq!(out.len(), dim * cols);
        if cols >= GATHER_COLS {
            self.apply_rows(v, out, cols);
            return;
        }
        let rows_per_chunk = (CHUNK_VALUES / cols).max(1).next_power_of_two().min(dim);
        let low_bits = rows_per_chunk.trailing_zeros() as usize;
        let width = rows_per_chunk * cols;
        let a = self.a;
        for (chunk, out_c) in out.chunks_exact_mut(width).enumerate() {
            let v_c = &v[chunk * width..(chunk + 1) * width];
            let d_c = &self.diag[chunk * rows_per_chunk..(chunk + 1) * rows_per_chunk];
            for ((o_row, v_row), &d) in out_c
                .chunks_exact_mut(cols)
                .zip(v_c.chunks_exact(cols))
                .zip(d_c)
            {
                for (o, x) in o_row.iter_mut().zip(v_row) {
                    *o = d * x;
                }
            }
            if a == 0.0 {
                continue;
            }
            for bit in 0..low_bits {
                let stride = (1usize << bit) * cols;
                for (o_pair, v_pair) in out_c
                    .chunks_exact_mut(2 * stride)
                    .zip(v_c.chunks_exact(2 * stride))
                {
                    let (lo_out, hi_out) = o_pair.split_at_mut(stride);
                    let (lo_v, hi_v) = v_pair.split_at(stride);
                    for (o, x) in lo_out.iter_mut().zip(hi_v) {
                        *o += a * x;
                    }
                    for (o, x) in hi_out.iter_mut().zip(lo_v) {
                        *o += a * x;
                    }
                }
            }
            for bit in low_bits..self.n {
                let partner = chunk ^ (1 << (bit - low_bits));
                let v_p = &v[partner * width..(partner + 1) * width];
                for (o, &x) in out_c.iter_mut().zip(v_p) {
                    *o += a * x;
                }
            }
        }
    }

    /// Wide blocks: each output row sums its `n` neighbor rows in
    /// registers. Common widths get a fixed-size kernel.
    fn apply_rows(&self, v: &[f64], out: &mut [f64], cols: usize) {
        match cols {
            8 => {
                let _ = self.apply_rows_dot::<8>(v.as_chunks().0, out.as_chunks_mut().0);
            }
            16 => {
                let _ = self.apply_rows_dot::<16>(v.as_chunks().0, out.as_chunks_mut().0);
            }
            32 => {
                let _ = self.apply_rows_dot::<32>(v.as_chunks().0, out.as_chunks_mut().0);
            }
            _ => self.apply_rows_dyn(v, out, cols),
        }
    }

    /// `out = H V` for rows of `C` columns, returning the column dot
    /// products `V^T H V` from the same pass.
    pub(crate) fn apply_rows_dot<const C: usize>(
        &self,
        v: &[[f64; C]],
        out: &mut [[f64; C]],
    ) -> [f64; C] {
        assert_eq!(v.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        let a = self.a;
        let mut dot = [0.0; C];
        for (x, (o_row, &d)) in out.iter_mut().zip(&self.diag).enumerate() {
            let mut acc = [0.0; C];
            for i in 0..self.n {
                let row = &v[x ^ (1 << i)];
                for k in 0..C {
                    acc[k] += row[k];
                }
            }
            let own = &v[x];
            for k in 0..C {
                let y = d * own[k] + a * acc[k];
                o_row[k] = y;
                dot[k] += own[k] * y;
            }
        }
        dot
    }

    fn apply_rows_dyn(&self, v: &[f64], out: &mut [f64], cols: usize) {
        let a = self.a;
        for (x, (o_row, &d)) in out.chunks_exact_mut(cols).zip(&self.diag).enumerate() {
            o_row.fill(0.0);
            for i in 0..self.n {
                let p = x ^ (1 << i);
                for (o, y) in o_row.iter_mut().zip(&v[p * cols..(p + 1) * cols]) {
                    *o += y;
                }
            }
            for (o, y) in o_row.iter_mut().zip(&v[x * cols..(x + 1) * cols]) {
                *o = d * y + a * *o;
            }
        }
    }

    /// Dense matrix, for small systems and tests.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let dim = self.dim();
        let mut eye = vec![0.0; dim * dim];
        for x in 0..dim {
            eye[x * dim + x] = 1.0;
        }
        let mut out = vec![0.0; dim * dim];
        self.apply_block(&eye, &mut out, dim);
        // Row-major `out[x * dim + c]` is column c of H at row x.
        nalgebra::DMatrix::from_row_slice(dim, dim, &out)
    }
}

/// `H(s) v`, checking the vector length.
pub fn apply_hamiltonian(
    inst: &IsingInstance,
    s: f64,
    sched: &Schedule,
    v: &[f64],
) -> Result<Vec<f64>> {
    let dim = 1usize << inst.n();
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: v.len(),
        });
    }
    let h = Hamiltonian::new(inst, s, sched)?;
    let mut out = vec![0.0; dim];
    h.apply(v, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::quantum::default_schedule;

    fn naive(h: &Hamiltonian, v: &[f64]) -> Vec<f64> {
        (0..h.dim())
            .map(|x| h.diag[x] * v[x] + h.a * (0..h.n).map(|i| v[x ^ (1 << i)]).sum::<f64>())
            .collect()
    }

    #[test]
    fn single_spin() {
        let inst = IsingInstance::from_graph(&Graph::empty(1).unwrap());
        let sched = default_schedule();
        assert_eq!(
            apply_hamiltonian(&inst, 0.0, &sched, &[1.0, 0.0]).unwrap(),
            vec![0.0, 1.0]
        );
        assert_eq!(
            apply_hamiltonian(&inst, 1.0, &sched, &[1.0, 0.0]).unwrap(),
            vec![1.0, 0.0]
        );
        assert!(apply_hamiltonian(&inst, 0.5, &sched, &[1.0]).is_err());
    }

    #[test]
    fn k2_matrix_by_hand() {
        let inst = IsingInstance::from_graph(&Graph::path(2).unwrap());
        let (a, b) = (0.3, 0.7);
        let h = Hamiltonian::from_coefficients(&inst, a, b).unwrap();
        // States 00 (up,up), 01, 10, 11: E_p = 3, -1, -1, -1.
        #[rustfmt::skip]
        let expect = nalgebra::DMatrix::from_row_slice(4, 4, &[
            3.0 * b, a, a, 0.0,
            a, -b, 0.0, a,
            a, 0.0, -b, a,
            0.0, a, a, -b,
        ]);
        assert!((h.to_dense() - expect).abs().max() < 1e-15);
    }

    #[test]
    fn chunked_kernel_matches_the_definition() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = Graph::random(14, 0.3, &mut rng).unwrap();
        let inst = IsingInstance::from_graph(&g);
        let h = Hamiltonian::from_coefficients(&inst, 0.4, 0.6).unwrap();
        let v: Vec<f64> = (0..h.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut out = vec![0.0; h.dim()];
        h.apply(&v, &mut out);
        let want = naive(&h, &v);
        assert!(out.iter().zip(&want).all(|(x, y)| (x - y).abs() < 1e-12));

        // Columns side by side give the same products, for the chunked
        // kernel, the fixed-width gather and the generic gather.
        for cols in [3, 8, 11, 32] {
            let mut block = vec![0.0; h.dim() * cols];
            for x in 0..h.dim() {
                block[x * cols + 1] = v[x];
            }
            let mut out_block = vec![0.0; h.dim() * cols];
            h.apply_block(&block, &mut out_block, cols);
            assert!(
                (0..h.dim()).all(|x| (out_block[x * cols + 1] - want[x]).abs() < 1e-12
                    && out_block[x * cols] == 0.0),
                "cols={cols}"
            );
        }
    }
}
