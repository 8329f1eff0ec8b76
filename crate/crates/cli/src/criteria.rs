//! The acceptance battery: twelve checks covering the symbolic layer, the
//! tensor identities and the limit-model classifications, each with its
//! tolerances pinned. `report --all` and the acceptance test target both run
//! these.

use crate::battery::{
    check_canonical_words, check_equalities_21_22_23, check_word_soundness, g_sig, m_sig,
    random_bilinear, random_dims, random_trilinear, rng_for,
};
use crate::commands::{limits_run, signature_chain};
use trilin::limits::{Classification, LimitStatus, LimitValue};
use trilin::signatures::NetIndex::{Alpha, Beta, Gamma};
use trilin::signatures::{flip_compose, ExtensionOrder, Flip, Word};
use trilin::tensor::{
    check_identity_2_4, check_identity_2_5, check_identity_2_6, check_mixed_word_identities,
};

pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(), String>;

pub const CRITERIA: [(usize, &str, Check); 12] = [
    (1, "signature-chain", signature_chain_criterion),
    (2, "flip-group", flip_group_criterion),
    (3, "word-permutation-soundness", word_soundness_criterion),
    (4, "reflexive-regularity", reflexive_regularity_criterion),
    (5, "equalities-2-1-2-2-2-3", equalities_criterion),
    (6, "composition-battery", composition_criterion),
    (7, "mixed-word-identities", mixed_words_criterion),
    (
        8,
        "limit-separation-triangular",
        triangular_limits_criterion,
    ),
    (9, "rank-one-regularity", rank_one_criterion),
    (10, "reflexive-middle", reflexive_middle_criterion),
    (11, "theorem21-consistency", theorem21_criterion),
    (12, "composed-examples", composed_criterion),
];

pub fn run_one(id: usize) -> CriterionResult {
    let (_, name, check) = CRITERIA[id - 1];
    match check() {
        Ok(()) => CriterionResult {
            id,
            name,
            passed: true,
            detail: String::new(),
        },
        Err(detail) => CriterionResult {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _, _)| run_one(*id)).collect()
}

// ---------------------------------------------------------------------------
// 1. The four adjoint signatures, exactly as printed forms.
// ---------------------------------------------------------------------------

fn signature_chain_criterion() -> Result<(), String> {
    let out = signature_chain("****").map_err(|e| e.to_string())?.text;
    let expected = [
        "step 1 *: W* x X x Y -> Z*",
        "step 2 *: Z** x W* x X -> Y*",
        "step 3 *: Y** x Z** x W* -> X*",
        "step 4 *: X** x Y** x Z** -> W**",
        "order: αβγ",
    ];
    let mut cursor = 0;
    for line in expected {
        match out[cursor..].find(line) {
            Some(pos) => cursor += pos + line.len(),
            None => return Err(format!("missing line `{line}` in:\n{out}")),
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 2. The flip group closes, has order 6 and satisfies the quoted identities.
// ---------------------------------------------------------------------------

fn flip_group_criterion() -> Result<(), String> {
    let elements: Vec<Option<Flip>> = std::iter::once(None)
        .chain(Flip::ALL.into_iter().map(Some))
        .collect();
    if elements.len() != 6 {
        return Err("group does not have order 6".to_string());
    }
    let compose = |a: Option<Flip>, b: Option<Flip>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => flip_compose(a, b),
    };
    for &a in &elements {
        let mut inverses = 0;
        for &b in &elements {
            if !elements.contains(&compose(a, b)) {
                return Err(format!("composition left the group at ({a:?},{b:?})"));
            }
            if compose(a, b).is_none() {
                inverses += 1;
            }
            for &c in &elements {
                if compose(compose(a, b), c) != compose(a, compose(b, c)) {
                    return Err(format!("associativity failed at ({a:?},{b:?},{c:?})"));
                }
            }
        }
        if inverses != 1 {
            return Err(format!("{a:?} has {inverses} inverses"));
        }
    }
    let quoted = [
        (Flip::R, Flip::T, Flip::J),
        (Flip::S, Flip::R, Flip::J),
        (Flip::R, Flip::S, Flip::I),
        (Flip::T, Flip::R, Flip::I),
    ];
    for (a, b, want) in quoted {
        if flip_compose(a, b) != Some(want) {
            return Err(format!("{a}·{b} != {want}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 3. Every word of length <= 6 acts as its predicted rearrangement, bitwise,
//    on 10 seeded random 2x3x2x2 tensors.
// ---------------------------------------------------------------------------

fn all_words_up_to(max_len: usize) -> Vec<Word> {
    let letters = ['*', 'i', 'j', 'r', 't', 's'];
    let mut words = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * letters.len());
        for w in &frontier {
            for l in letters {
                let mut s = String::with_capacity(w.len() + 1);
                s.push_str(w);
                s.push(l);
                next.push(s);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
        .into_iter()
        .map(|w| Word::parse(&w).expect("valid letters"))
        .collect()
}

fn word_soundness_criterion() -> Result<(), String> {
    let mut rng = rng_for(3);
    let tensors: Vec<_> = (0..10)
        .map(|_| random_trilinear(&mut rng, [2, 3, 2, 2]))
        .collect();
    let words = all_words_up_to(6);
    if words.len() != 55987 {
        return Err(format!("expected 55987 words, enumerated {}", words.len()));
    }
    for w in &words {
        for t in &tensors {
            if !check_word_soundness(t, w) {
                return Err(format!("word {w} disagrees with its axis permutation"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 4. All six canonical words return the original tensor bitwise.
// ---------------------------------------------------------------------------

fn reflexive_regularity_criterion() -> Result<(), String> {
    let mut rng = rng_for(4);
    for trial in 0..100 {
        let dims = random_dims(&mut rng, 5);
        let t = random_trilinear(&mut rng, dims);
        if !check_canonical_words(&t) {
            return Err(format!("canonical word moved entries on trial {trial}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 5. The word pairs of (2-1), (2-2), (2-3) agree bitwise.
// ---------------------------------------------------------------------------

fn equalities_criterion() -> Result<(), String> {
    let mut rng = rng_for(5);
    for trial in 0..100 {
        let dims = random_dims(&mut rng, 5);
        let t = random_trilinear(&mut rng, dims);
        if !check_equalities_21_22_23(&t) {
            return Err(format!("equality pair failed on trial {trial}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 6. The composition identities (2-4), (2-5), (2-6) at 1e-12 relative
//    Frobenius distance.
// ---------------------------------------------------------------------------

fn composition_criterion() -> Result<(), String> {
    let mut rng = rng_for(6);
    for trial in 0..100 {
        let dims = random_dims(&mut rng, 3);
        let inner = dims[1];
        let m = random_bilinear(&mut rng, [dims[0], dims[1], inner], m_sig());
        let g = random_bilinear(&mut rng, [inner, dims[2], dims[3]], g_sig());
        let ok = check_identity_2_4(&g, &m).map_err(|e| e.to_string())?
            && check_identity_2_5(&g, &m).map_err(|e| e.to_string())?
            && check_identity_2_6(&g, &m).map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!("composition identity failed on trial {trial}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 7. The mixed adjoint-word pairs agree bitwise.
// ---------------------------------------------------------------------------

fn mixed_words_criterion() -> Result<(), String> {
    let mut rng = rng_for(7);
    for trial in 0..100 {
        let dims = random_dims(&mut rng, 5);
        let t = random_trilinear(&mut rng, dims);
        if !check_mixed_word_identities(&t) {
            return Err(format!("mixed-word pair failed on trial {trial}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Limit-model criteria (N = 50, H = 10, tol = 1e-9 throughout).
// ---------------------------------------------------------------------------

const N: usize = 50;
const H: usize = 10;
const TOL: f64 = 1e-9;

fn scalar_values(run: &crate::commands::LimitsRun) -> Result<Vec<f64>, String> {
    run.report
        .orders
        .iter()
        .map(|o| match &o.result.value {
            Some(LimitValue::Scalar(v)) => Ok(*v),
            other => Err(format!("order {} has no scalar value: {other:?}", o.order)),
        })
        .collect()
}

// 8. Triangular separation: (α,β,γ) gives 1, the other five give 0, all
//    layers exactly stabilized, classification irregular.
fn triangular_limits_criterion() -> Result<(), String> {
    let run = limits_run("triangular-ijk", N, H, TOL).map_err(|e| e.to_string())?;
    let values = scalar_values(&run)?;
    if values != vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0] {
        return Err(format!("six-value table is {values:?}"));
    }
    for o in &run.report.orders {
        if o.result.status != LimitStatus::Stabilized {
            return Err(format!(
                "order {} not exactly stabilized: {:?}",
                o.order, o.result.status
            ));
        }
    }
    match &run.report.classification {
        Classification::Irregular { .. } => Ok(()),
        other => Err(format!("classification {other:?}")),
    }
}

// 9. The rank-one map classifies regular with all six values within 1e-9 of
//    each other on every functional.
fn rank_one_criterion() -> Result<(), String> {
    let run = limits_run("rank-one", N, H, TOL).map_err(|e| e.to_string())?;
    if run.report.classification != Classification::AronBernerRegularEvidence {
        return Err(format!("classification {:?}", run.report.classification));
    }
    let labeled: Vec<Vec<(String, f64)>> = run
        .report
        .orders
        .iter()
        .map(|o| {
            o.result
                .value
                .as_ref()
                .expect("regular orders have values")
                .labeled()
        })
        .collect();
    for other in &labeled[1..] {
        for ((label, a), (_, b)) in labeled[0].iter().zip(other) {
            if (a - b).abs() > TOL {
                return Err(format!("functional {label}: values {a} vs {b}"));
            }
        }
    }
    Ok(())
}

// 10. The reflexive-middle example: close-to-regular with the pinned values.
fn reflexive_middle_criterion() -> Result<(), String> {
    let run = limits_run("reflexive-middle", N, H, TOL).map_err(|e| e.to_string())?;
    if run.report.classification != Classification::CloseToRegularEvidence {
        return Err(format!("classification {:?}", run.report.classification));
    }
    let value = |order: ExtensionOrder| -> Result<f64, String> {
        run.report
            .orders
            .iter()
            .find(|o| o.order == order)
            .and_then(|o| match &o.result.value {
                Some(LimitValue::Scalar(v)) => Some(*v),
                _ => None,
            })
            .ok_or_else(|| format!("no scalar value for {order}"))
    };
    let pairs = [
        (ExtensionOrder([Gamma, Alpha, Beta]), 0.0),
        (ExtensionOrder([Beta, Gamma, Alpha]), 0.0),
        (ExtensionOrder([Alpha, Beta, Gamma]), 1.0),
    ];
    for (order, want) in pairs {
        let got = value(order)?;
        if got != want {
            return Err(format!("order {order} gave {got}, wanted {want}"));
        }
    }
    Ok(())
}

// 11. The two-triple regularity criterion is data-consistent on every
//     catalog example.
fn theorem21_criterion() -> Result<(), String> {
    for name in trilin::catalog::BUILTIN_NAMES {
        let run = limits_run(name, N, H, TOL).map_err(|e| e.to_string())?;
        match run.theorem21 {
            Some(true) => {}
            other => return Err(format!("{name}: consistency {other:?}")),
        }
    }
    Ok(())
}

// 12. The composed examples witness the factorization criterion and the
//     failure of its converse.
fn composed_criterion() -> Result<(), String> {
    let regular = limits_run("composed-regular", N, H, TOL).map_err(|e| e.to_string())?;
    if regular.report.classification != Classification::AronBernerRegularEvidence {
        return Err(format!(
            "composed-regular: {:?}",
            regular.report.classification
        ));
    }
    let irregular = limits_run("composed-irregular", N, H, TOL).map_err(|e| e.to_string())?;
    match &irregular.report.classification {
        Classification::Irregular { .. } => Ok(()),
        other => Err(format!("composed-irregular: {other:?}")),
    }
}
