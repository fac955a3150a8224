#![allow(dead_code)]

use std::sync::Arc;

use bracketwidth::exactpoly::Polynomial;
use bracketwidth::rings::{dan_normalize, DanElement, DanRing};
use bracketwidth::sample::derive_seed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(label: &str, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(20260918, label, i))
}

/// `{f, g}` on the torus from the generator relation `{x, y} = xy`:
/// `xy (f_x g_y - f_y g_x)`.
pub fn torus_leibniz(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let xy = Polynomial::parse("x*y", f.space()).unwrap();
    &xy * &(&(&f.partial_idx(0) * &g.partial_idx(1)) - &(&f.partial_idx(1) * &g.partial_idx(0)))
}

/// `{f, g} = sum_{s,t} f_s g_t {s, t}` over the generators, with
/// `{x, y} = p'`, `{x, z} = x`, `{y, z} = -y`.
pub fn dan_leibniz(ring: &Arc<DanRing>, f: &DanElement, g: &DanElement) -> DanElement {
    let raw = ring.raw_space();
    let pp = ring.p_prime().embed(raw).unwrap();
    let x = Polynomial::var(raw, "x").unwrap();
    let y = Polynomial::var(raw, "y").unwrap();
    let zero = Polynomial::zero(raw);
    let table = [
        [zero.clone(), pp.clone(), x.clone()],
        [-&pp, zero.clone(), -&y],
        [-&x, y.clone(), zero.clone()],
    ];
    let (fr, gr) = (f.to_raw(), g.to_raw());
    let mut acc = Polynomial::zero(raw);
    for s in 0..3 {
        for t in 0..3 {
            if !table[s][t].is_zero() {
                acc = &acc + &(&(&fr.partial_idx(s) * &gr.partial_idx(t)) * &table[s][t]);
            }
        }
    }
    dan_normalize(ring, &acc)
}
