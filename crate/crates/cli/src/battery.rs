//! Finite-dimensional identity battery on seeded random tensors.
//!
//! One ChaCha8 generator drives a whole run; entries are uniform in [-1, 1],
//! so identical seeds reproduce identical tensors and identical output.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trilin::signatures::{
    word_to_axis_permutation, Base, Flip, Letter, Signature, Space, Word, CANONICAL_WORDS,
};
use trilin::tensor::{
    check_identity_2_4, check_identity_2_5, check_identity_2_6, check_mixed_word_identities,
    duality_sides, duality_sides_bilinear, BilinearTensor, TrilinearTensor, Vector,
};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_entries(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

pub fn random_trilinear(rng: &mut ChaCha8Rng, dims: [usize; 4]) -> TrilinearTensor {
    let entries = random_entries(rng, dims.iter().product());
    TrilinearTensor::new(dims, entries, Signature::canonical_trilinear())
        .expect("random tensor entries are finite")
}

pub fn random_bilinear(rng: &mut ChaCha8Rng, dims: [usize; 3], sig: Signature) -> BilinearTensor {
    let entries = random_entries(rng, dims.iter().product());
    BilinearTensor::new(dims, entries, sig).expect("random tensor entries are finite")
}

pub fn random_dims(rng: &mut ChaCha8Rng, max: usize) -> [usize; 4] {
    [
        rng.random_range(1..=max),
        rng.random_range(1..=max),
        rng.random_range(1..=max),
        rng.random_range(1..=max),
    ]
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    let letters = (0..len)
        .map(|_| match rng.random_range(0..6) {
            0 => Letter::Star,
            1 => Letter::Flip(Flip::I),
            2 => Letter::Flip(Flip::J),
            3 => Letter::Flip(Flip::R),
            4 => Letter::Flip(Flip::T),
            _ => Letter::Flip(Flip::S),
        })
        .collect();
    Word::new(letters)
}

pub fn m_sig() -> Signature {
    Signature::bilinear(
        Space::base(Base::X),
        Space::base(Base::Y),
        Space::base(Base::S),
    )
}

pub fn g_sig() -> Signature {
    Signature::bilinear(
        Space::base(Base::S),
        Space::base(Base::Z),
        Space::base(Base::W),
    )
}

// ---------------------------------------------------------------------------
// Per-identity checks
// ---------------------------------------------------------------------------

/// Duality pairing at every level of the adjoint chain, exact under the
/// shared contraction order.
pub fn check_duality_chain(t: &TrilinearTensor, rng: &mut ChaCha8Rng, probes: usize) -> bool {
    let mut u = t.clone();
    for _ in 0..4 {
        let dims = u.dims();
        for _ in 0..probes {
            let a = random_entries(rng, dims[0]);
            let b = random_entries(rng, dims[1]);
            let c = random_entries(rng, dims[2]);
            let d = random_entries(rng, dims[3]);
            let (lhs, rhs) = duality_sides(&u, &d, &a, &b, &c).expect("dims match");
            if lhs != rhs {
                return false;
            }
        }
        u = u.adjoint();
    }
    true
}

pub fn check_bilinear_duality(m: &BilinearTensor, rng: &mut ChaCha8Rng, probes: usize) -> bool {
    let dims = m.dims();
    for _ in 0..probes {
        let a = random_entries(rng, dims[0]);
        let b = random_entries(rng, dims[1]);
        let d = random_entries(rng, dims[2]);
        let (lhs, rhs) = duality_sides_bilinear(m, &d, &a, &b).expect("dims match");
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// All six canonical extension words return the tensor unchanged
/// (finite-dimensional spaces are reflexive).
pub fn check_canonical_words(t: &TrilinearTensor) -> bool {
    CANONICAL_WORDS.iter().all(|text| {
        let w = Word::parse(text).expect("canonical words parse");
        t.apply_word(&w).entries_equal(t)
    })
}

/// Letter-by-letter application equals the composed-permutation prediction.
pub fn check_word_soundness(t: &TrilinearTensor, w: &Word) -> bool {
    let folded = t.apply_word(w);
    let (dims, entries) = t.rearranged_by(&word_to_axis_permutation(w));
    folded.dims() == dims && folded.entries() == entries.as_slice()
}

/// The word pairs of equalities (2-1), (2-2), (2-3).
pub fn check_equalities_21_22_23(t: &TrilinearTensor) -> bool {
    let pairs = [
        ("i****i", "s****t"),
        ("j****j", "****"),
        ("r****r", "t****s"),
    ];
    pairs.into_iter().all(|(wa, wb)| {
        let a = t.apply_word(&Word::parse(wa).expect("fixed word"));
        let b = t.apply_word(&Word::parse(wb).expect("fixed word"));
        a.entries_equal(&b)
    })
}

/// Random linearity probes in every slot, at relative tolerance 1e-12.
pub fn check_multilinearity(t: &TrilinearTensor, rng: &mut ChaCha8Rng, probes: usize) -> bool {
    let dims = t.dims();
    let args = t.sig().args();
    for _ in 0..probes {
        let vecs: Vec<Vector> = (0..3)
            .map(|slot| Vector::new(random_entries(rng, dims[slot]), args[slot]))
            .collect();
        for slot in 0..3 {
            let extra = Vector::new(random_entries(rng, dims[slot]), args[slot]);
            let mut bumped = vecs.clone();
            bumped[slot] = Vector::new(
                vecs[slot]
                    .coords
                    .iter()
                    .zip(&extra.coords)
                    .map(|(u, v)| u + v)
                    .collect(),
                args[slot],
            );
            let mut swapped = vecs.clone();
            swapped[slot] = extra;
            let lhs = t
                .evaluate(&bumped[0], &bumped[1], &bumped[2])
                .expect("dims match");
            let base = t
                .evaluate(&vecs[0], &vecs[1], &vecs[2])
                .expect("dims match");
            let other = t
                .evaluate(&swapped[0], &swapped[1], &swapped[2])
                .expect("dims match");
            for ((l, x), y) in lhs.coords.iter().zip(&base.coords).zip(&other.coords) {
                let want = x + y;
                if (l - want).abs() > 1e-12 * want.abs().max(1.0) {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The battery
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub passes: usize,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.passes == self.trials
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BatteryConfig {
    pub dims: [usize; 4],
    pub seed: u64,
    pub trials: usize,
}

fn count(
    name: &'static str,
    rng: &mut ChaCha8Rng,
    trials: usize,
    mut check: impl FnMut(&mut ChaCha8Rng) -> bool,
) -> IdentityOutcome {
    let mut passes = 0;
    for _ in 0..trials {
        if check(rng) {
            passes += 1;
        }
    }
    IdentityOutcome {
        name,
        trials,
        passes,
    }
}

/// Runs the full finite-dimensional identity battery on seeded random
/// tensors: duality at every chain level, the six-word identity, equalities
/// (2-1)-(2-3), the mixed adjoint words, the composition identities
/// (2-4)-(2-6) and multilinearity probes.
pub fn run_battery(cfg: &BatteryConfig) -> Vec<IdentityOutcome> {
    let mut rng = rng_for(cfg.seed);
    let dims = cfg.dims;
    let inner = dims[1];
    vec![
        count("duality-chain", &mut rng, cfg.trials, |rng| {
            let t = random_trilinear(rng, dims);
            check_duality_chain(&t, rng, 5)
        }),
        count("bilinear-duality", &mut rng, cfg.trials, |rng| {
            let m = random_bilinear(rng, [dims[0], dims[1], dims[2]], m_sig());
            check_bilinear_duality(&m, rng, 5)
        }),
        count(
            "canonical-words-return-the-map",
            &mut rng,
            cfg.trials,
            |rng| check_canonical_words(&random_trilinear(rng, dims)),
        ),
        count("word-permutation-soundness", &mut rng, cfg.trials, |rng| {
            let t = random_trilinear(rng, dims);
            (0..10).all(|_| {
                let w = random_word(rng, 6);
                check_word_soundness(&t, &w)
            })
        }),
        count("equalities-2-1-2-2-2-3", &mut rng, cfg.trials, |rng| {
            check_equalities_21_22_23(&random_trilinear(rng, dims))
        }),
        count("mixed-word-identities", &mut rng, cfg.trials, |rng| {
            check_mixed_word_identities(&random_trilinear(rng, dims))
        }),
        count("composition-2-4-2-5-2-6", &mut rng, cfg.trials, |rng| {
            let m = random_bilinear(rng, [dims[0], dims[1], inner], m_sig());
            let g = random_bilinear(rng, [inner, dims[2], dims[3]], g_sig());
            check_identity_2_4(&g, &m).expect("inner dims match")
                && check_identity_2_5(&g, &m).expect("inner dims match")
                && check_identity_2_6(&g, &m).expect("inner dims match")
        }),
        count("multilinearity-probes", &mut rng, cfg.trials, |rng| {
            let t = random_trilinear(rng, dims);
            check_multilinearity(&t, rng, 3)
        }),
    ]
}
