//! Pyramid DWT, inverse DWT and multiresolution analysis.
//!
//! Analysis follows `u_j(n) = sum_k g(k - 2n) u_{j-1}(k)` and
//! `w_j(n) = sum_k h(k - 2n) u_{j-1}(k)` with circular indexing, starting
//! from `u_0 = x`. Each level costs `O(L * N_j)`, so the whole pyramid is
//! `O(L * N)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{FilterId, FilterPair};

/// Wavelet coefficients `w[0] = w_1, ..., w[J-1] = w_J` and the level-J
/// scale coefficients `u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DwtCoefficients {
    pub w: Vec<Vec<f64>>,
    pub u: Vec<f64>,
    pub depth: usize,
    pub n: usize,
    pub filter: FilterId,
    /// Set once the coefficients have been phase aligned.
    #[serde(default)]
    pub aligned: bool,
}

impl DwtCoefficients {
    /// Level-`j` wavelet coefficients, `j` counted from 1.
    pub fn level(&self, j: usize) -> Option<&[f64]> {
        j.checked_sub(1)
            .and_then(|i| self.w.get(i))
            .map(Vec::as_slice)
    }

    /// `[u_J | w_J | ... | w_1]`, the layout used for plotting.
    pub fn concatenated(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n);
        out.extend_from_slice(&self.u);
        for w in self.w.iter().rev() {
            out.extend_from_slice(w);
        }
        out
    }

    /// Band names matching [`concatenated`](Self::concatenated).
    pub fn concatenated_bands(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.n);
        out.extend(std::iter::repeat_n(
            format!("u{}", self.depth),
            self.u.len(),
        ));
        for (i, w) in self.w.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(format!("w{}", i + 1), w.len()));
        }
        out
    }

    pub fn energy(&self) -> f64 {
        self.w.iter().flatten().chain(&self.u).map(|x| x * x).sum()
    }

    /// Fraction of total energy in `w_1..w_J` followed by `u_J`.
    pub fn energy_fractions(&self) -> Vec<f64> {
        let total = self.energy();
        let mut out: Vec<f64> = self
            .w
            .iter()
            .map(|w| w.iter().map(|x| x * x).sum::<f64>())
            .collect();
        out.push(self.u.iter().map(|x| x * x).sum());
        if total > 0.0 {
            out.iter_mut().for_each(|e| *e /= total);
        }
        out
    }

    fn check_consistent(&self) -> Result<()> {
        if self.depth == 0 || self.w.len() != self.depth {
            return Err(Error::InconsistentCoefficients(format!(
                "depth {} but {} wavelet levels",
                self.depth,
                self.w.len()
            )));
        }
        if !self.n.is_multiple_of(1 << self.depth) {
            return Err(Error::LengthNotDivisible {
                len: self.n,
                depth: self.depth,
            });
        }
        for (i, w) in self.w.iter().enumerate() {
            if w.len() != self.n >> (i + 1) {
                return Err(Error::InconsistentCoefficients(format!(
                    "level {} has {} coefficients, expected {}",
                    i + 1,
                    w.len(),
                    self.n >> (i + 1)
                )));
            }
        }
        if self.u.len() != self.n >> self.depth {
            return Err(Error::InconsistentCoefficients(format!(
                "scale coefficients have length {}, expected {}",
                self.u.len(),
                self.n >> self.depth
            )));
        }
        Ok(())
    }
}

/// Details `D_1..D_J` and smooth `S_J`, each as long as the input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MraDecomposition {
    pub details: Vec<Vec<f64>>,
    pub smooth: Vec<f64>,
}

impl MraDecomposition {
    /// `S_J + sum_j D_j`.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut out = self.smooth.clone();
        for d in &self.details {
            for (o, v) in out.iter_mut().zip(d) {
                *o += v;
            }
        }
        out
    }
}

fn check_length(n: usize, depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    if depth >= usize::BITS as usize || n == 0 || !n.is_multiple_of(1usize << depth) {
        return Err(Error::LengthNotDivisible { len: n, depth });
    }
    Ok(())
}

/// One analysis step: filters `input` with `g` and `h`, keeping every
/// other output.
pub(crate) fn analysis_step(input: &[f64], g: &[f64], h: &[f64], u: &mut [f64], w: &mut [f64]) {
    let n = input.len();
    let l = g.len();
    let half = n / 2;
    // Outputs whose taps stay inside the buffer need no wraparound.
    let interior = if n >= l { (n - l) / 2 + 1 } else { 0 }.min(half);
    for k in 0..interior {
        let x = &input[2 * k..2 * k + l];
        let mut su = 0.0;
        let mut sw = 0.0;
        for i in 0..l {
            su += g[i] * x[i];
            sw += h[i] * x[i];
        }
        u[k] = su;
        w[k] = sw;
    }
    for k in interior..half {
        let mut su = 0.0;
        let mut sw = 0.0;
        for i in 0..l {
            let x = input[(2 * k + i) % n];
            su += g[i] * x;
            sw += h[i] * x;
        }
        u[k] = su;
        w[k] = sw;
    }
}

/// One synthesis step, the transpose of [`analysis_step`]. `w` may be
/// `None` to synthesize from the scale coefficients alone (and vice versa).
pub(crate) fn synthesis_step(
    u: Option<&[f64]>,
    w: Option<&[f64]>,
    g: &[f64],
    h: &[f64],
    out: &mut [f64],
) {
    let n = out.len();
    let l = g.len();
    out.iter_mut().for_each(|o| *o = 0.0);
    for k in 0..n / 2 {
        let a = u.map_or(0.0, |u| u[k]);
        let b = w.map_or(0.0, |w| w[k]);
        if 2 * k + l <= n {
            let o = &mut out[2 * k..2 * k + l];
            for i in 0..l {
                o[i] += g[i] * a + h[i] * b;
            }
        } else {
            for i in 0..l {
                out[(2 * k + i) % n] += g[i] * a + h[i] * b;
            }
        }
    }
}

/// Forward pyramid DWT to depth `depth`.
pub fn dwt(x: &[f64], f: &FilterPair, depth: usize) -> Result<DwtCoefficients> {
    let n = x.len();
    check_length(n, depth)?;
    let mut w = Vec::with_capacity(depth);
    let mut current = x.to_vec();
    for _ in 0..depth {
        let half = current.len() / 2;
        let mut u = vec![0.0; half];
        let mut wj = vec![0.0; half];
        analysis_step(&current, &f.g, &f.h, &mut u, &mut wj);
        w.push(wj);
        current = u;
    }
    Ok(DwtCoefficients {
        w,
        u: current,
        depth,
        n,
        filter: f.id,
        aligned: false,
    })
}

fn check_filter(c: &DwtCoefficients, f: &FilterPair) -> Result<()> {
    if c.filter != f.id {
        return Err(Error::FilterMismatch {
            expected: c.filter.to_string(),
            found: f.id.to_string(),
        });
    }
    Ok(())
}

/// Synthesis from level `from` down to level 0 using the given per-level
/// wavelet coefficients (`None` = zero) and level-`from` scale coefficients.
fn synthesize(levels: &[Option<&[f64]>], u: Option<&[f64]>, f: &FilterPair, n: usize) -> Vec<f64> {
    let depth = levels.len();
    let mut current: Option<Vec<f64>> = u.map(<[f64]>::to_vec);
    for j in (0..depth).rev() {
        let len = n >> j;
        if current.is_none() && levels[j].is_none() {
            continue;
        }
        let mut out = vec![0.0; len];
        synthesis_step(current.as_deref(), levels[j], &f.g, &f.h, &mut out);
        current = Some(out);
    }
    current.unwrap_or_else(|| vec![0.0; n])
}

/// Inverse DWT. Coefficients must have been produced with `f`.
///
/// Alignment is undone first, so aligned coefficients invert too.
pub fn idwt(c: &DwtCoefficients, f: &FilterPair) -> Result<Vec<f64>> {
    check_filter(c, f)?;
    c.check_consistent()?;
    let c = if c.aligned { unalign(c, f) } else { c.clone() };
    let levels: Vec<Option<&[f64]>> = c.w.iter().map(|w| Some(w.as_slice())).collect();
    Ok(synthesize(&levels, Some(&c.u), f, c.n))
}

/// Multiresolution analysis: `D_j` synthesizes `w_j` alone, `S_J`
/// synthesizes `u_J` alone.
pub fn mra(x: &[f64], f: &FilterPair, depth: usize) -> Result<MraDecomposition> {
    let c = dwt(x, f, depth)?;
    mra_from_coefficients(&c, f)
}

pub fn mra_from_coefficients(c: &DwtCoefficients, f: &FilterPair) -> Result<MraDecomposition> {
    check_filter(c, f)?;
    c.check_consistent()?;
    let c = if c.aligned { unalign(c, f) } else { c.clone() };
    let details = (0..c.depth)
        .map(|j| {
            let levels: Vec<Option<&[f64]>> = (0..c.depth)
                .map(|i| (i == j).then_some(c.w[i].as_slice()))
                .collect();
            synthesize(&levels, None, f, c.n)
        })
        .collect();
    let none: Vec<Option<&[f64]>> = vec![None; c.depth];
    let smooth = synthesize(&none, Some(&c.u), f, c.n);
    Ok(MraDecomposition { details, smooth })
}

/// Equivalent filter mapping `x` to level-`j` coefficients: the cascade
/// of `g` upsampled by `1, 2, ..., 2^{j-2}` followed by `last` upsampled by
/// `2^{j-1}`.
pub fn equivalent_filter(f: &FilterPair, j: usize, wavelet: bool) -> Vec<f64> {
    let mut acc = vec![1.0];
    for level in 0..j {
        let taps = if wavelet && level + 1 == j {
            &f.h
        } else {
            &f.g
        };
        let stride = 1usize << level;
        let mut next = vec![0.0; acc.len() + stride * (taps.len() - 1)];
        for (a, &av) in acc.iter().enumerate() {
            for (t, &tv) in taps.iter().enumerate() {
                next[a + stride * t] += av * tv;
            }
        }
        acc = next;
    }
    acc
}

/// Energy centroid `sum p e_p^2 / sum e_p^2` of a filter, in taps.
pub fn energy_centroid(filter: &[f64]) -> f64 {
    let (num, den) = filter
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(num, den), (p, &e)| {
            (num + p as f64 * e * e, den + e * e)
        });
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Coefficient shift that aligns level-`j` coefficients with time: the
/// equivalent filter's centroid divided by the level's decimation,
/// rounded to the nearest coefficient.
pub fn alignment_shift(f: &FilterPair, j: usize, wavelet: bool) -> usize {
    let c = energy_centroid(&equivalent_filter(f, j, wavelet));
    (c / (1u64 << j) as f64).round() as usize
}

fn rotate(v: &[f64], shift: usize, forward: bool) -> Vec<f64> {
    let mut out = v.to_vec();
    if !v.is_empty() {
        let s = shift % v.len();
        if forward {
            out.rotate_right(s);
        } else {
            out.rotate_left(s);
        }
    }
    out
}

/// Circularly shifts every level so coefficient `k` of level `j` sits at
/// time `2^j k`. Aligning twice is the same as aligning once.
pub fn align_coefficients(c: &DwtCoefficients, f: &FilterPair) -> DwtCoefficients {
    if c.aligned {
        return c.clone();
    }
    let mut out = c.clone();
    for (i, w) in out.w.iter_mut().enumerate() {
        *w = rotate(w, alignment_shift(f, i + 1, true), true);
    }
    out.u = rotate(&out.u, alignment_shift(f, c.depth, false), true);
    out.aligned = true;
    out
}

pub(crate) fn unalign(c: &DwtCoefficients, f: &FilterPair) -> DwtCoefficients {
    let mut out = c.clone();
    for (i, w) in out.w.iter_mut().enumerate() {
        *w = rotate(w, alignment_shift(f, i + 1, true), false);
    }
    out.u = rotate(&out.u, alignment_shift(f, c.depth, false), false);
    out.aligned = false;
    out
}
