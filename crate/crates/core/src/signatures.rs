//! Symbolic layer: spaces, signatures, flips, adjoint-flip words and their
//! axis-permutation semantics, plus the dictionary from canonical extension
//! words to iterated-limit orders.
//!
//! Words are read left to right: `f^{t****s}` means "flip by t, take the
//! adjoint four times, flip by s". The five flips together with the identity
//! form the symmetric group on the three argument slots.

use std::fmt;
use thiserror::Error;

/// Errors from the symbolic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("flip undefined for arity 2")]
    FlipOnBilinear,
    #[error("signature arity must be 2 or 3, got {0}")]
    BadArity(usize),
    #[error("not a canonical extension word: {0}")]
    NotCanonical(String),
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("malformed signature text `{0}`")]
    BadSignatureText(String),
}

/// Word parse failure, with the 1-based column of the offending character.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid word letter `{found}` at column {column}")]
pub struct WordParseError {
    pub column: usize,
    pub found: char,
}

// ---------------------------------------------------------------------------
// Spaces and signatures
// ---------------------------------------------------------------------------

/// Base-space role. `S` is the intermediate space of a bilinear factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    X,
    Y,
    Z,
    W,
    S,
}

impl Base {
    pub const ALL: [Base; 5] = [Base::X, Base::Y, Base::Z, Base::W, Base::S];

    pub fn letter(self) -> char {
        match self {
            Base::X => 'X',
            Base::Y => 'Y',
            Base::Z => 'Z',
            Base::W => 'W',
            Base::S => 'S',
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A base space at some dual level: level 0 is the space itself, 1 its dual,
/// 2 its bidual, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Space {
    pub base: Base,
    pub dual_level: u32,
}

impl Space {
    pub const fn new(base: Base, dual_level: u32) -> Self {
        Space { base, dual_level }
    }

    pub const fn base(base: Base) -> Self {
        Space::new(base, 0)
    }

    /// The dual of this space (one more star).
    pub fn dual(self) -> Self {
        Space::new(self.base, self.dual_level + 1)
    }

    /// Dual level reduced mod 2. The finite-dimensional backend identifies a
    /// space with its bidual, so collapsed spaces are what that backend sees.
    pub fn collapsed(self) -> Self {
        Space::new(self.base, self.dual_level % 2)
    }

    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let mut chars = text.chars();
        let head = chars
            .next()
            .ok_or_else(|| SignatureError::UnknownSpace(text.to_string()))?;
        let base = Base::ALL
            .into_iter()
            .find(|b| b.letter() == head)
            .ok_or_else(|| SignatureError::UnknownSpace(text.to_string()))?;
        let mut level = 0u32;
        for c in chars {
            if c == '*' {
                level += 1;
            } else {
                return Err(SignatureError::UnknownSpace(text.to_string()));
            }
        }
        Ok(Space::new(base, level))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for _ in 0..self.dual_level {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// Domain and codomain of a bilinear or tri-linear map.
///
/// Prints as `X x Y x Z -> W` with `*` suffixes marking dual levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    args: Vec<Space>,
    codomain: Space,
}

impl Signature {
    pub fn new(args: Vec<Space>, codomain: Space) -> Result<Self, SignatureError> {
        if args.len() != 2 && args.len() != 3 {
            return Err(SignatureError::BadArity(args.len()));
        }
        Ok(Signature { args, codomain })
    }

    pub fn bilinear(a: Space, b: Space, codomain: Space) -> Self {
        Signature {
            args: vec![a, b],
            codomain,
        }
    }

    pub fn trilinear(a: Space, b: Space, c: Space, codomain: Space) -> Self {
        Signature {
            args: vec![a, b, c],
            codomain,
        }
    }

    /// `X x Y x Z -> W`, all dual levels zero.
    pub fn canonical_trilinear() -> Self {
        Signature::trilinear(
            Space::base(Base::X),
            Space::base(Base::Y),
            Space::base(Base::Z),
            Space::base(Base::W),
        )
    }

    /// `X** x Y** x Z** -> W**`.
    pub fn bidual_trilinear() -> Self {
        Signature::trilinear(
            Space::new(Base::X, 2),
            Space::new(Base::Y, 2),
            Space::new(Base::Z, 2),
            Space::new(Base::W, 2),
        )
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn args(&self) -> &[Space] {
        &self.args
    }

    pub fn codomain(&self) -> Space {
        self.codomain
    }

    pub fn is_canonical_trilinear(&self) -> bool {
        *self == Signature::canonical_trilinear()
    }

    pub fn is_bidual_trilinear(&self) -> bool {
        *self == Signature::bidual_trilinear()
    }

    /// All dual levels reduced mod 2 (the finite-dimensional view).
    pub fn collapsed(&self) -> Signature {
        Signature {
            args: self.args.iter().map(|s| s.collapsed()).collect(),
            codomain: self.codomain.collapsed(),
        }
    }

    /// Parses the `A x B x C -> D` form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let (lhs, rhs) = text
            .split_once("->")
            .ok_or_else(|| SignatureError::BadSignatureText(text.to_string()))?;
        let codomain = Space::parse(rhs.trim())?;
        let args = lhs
            .split(" x ")
            .map(|tok| Space::parse(tok.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Signature::new(args, codomain)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, arg) in self.args.iter().enumerate() {
            if k > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{arg}")?;
        }
        write!(f, " -> {}", self.codomain)
    }
}

// ---------------------------------------------------------------------------
// Flips
// ---------------------------------------------------------------------------

/// The five argument flips of a tri-linear map, named by their defining lines:
///
/// ```text
/// f^i(y,x,z) = f(x,y,z)    f^j(x,z,y) = f(x,y,z)    f^r(z,y,x) = f(x,y,z)
/// f^t(z,x,y) = f(x,y,z)    f^s(y,z,x) = f(x,y,z)
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flip {
    I,
    J,
    R,
    T,
    S,
}

impl Flip {
    pub const ALL: [Flip; 5] = [Flip::I, Flip::J, Flip::R, Flip::T, Flip::S];

    /// `source[k]` is the original slot whose argument lands in slot `k` of
    /// the flipped map. For `t`, the arrangement `Z,X,Y` gives `[2,0,1]`.
    pub fn arg_source(self) -> [usize; 3] {
        match self {
            Flip::I => [1, 0, 2],
            Flip::J => [0, 2, 1],
            Flip::R => [2, 1, 0],
            Flip::T => [2, 0, 1],
            Flip::S => [1, 2, 0],
        }
    }

    pub fn letter(self) -> char {
        match self {
            Flip::I => 'i',
            Flip::J => 'j',
            Flip::R => 'r',
            Flip::T => 't',
            Flip::S => 's',
        }
    }

    pub fn from_letter(c: char) -> Option<Flip> {
        Flip::ALL.into_iter().find(|f| f.letter() == c)
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The adjoint rule on signatures: tri-linear `(A,B,C -> D)` becomes
/// `(D*, A, B -> C*)`; bilinear `(A,B -> D)` becomes `(D*, A -> B*)`.
pub fn star_signature(sig: &Signature) -> Signature {
    let args = sig.args();
    let mut new_args = Vec::with_capacity(args.len());
    new_args.push(sig.codomain().dual());
    new_args.extend_from_slice(&args[..args.len() - 1]);
    Signature {
        args: new_args,
        codomain: args[args.len() - 1].dual(),
    }
}

/// Reorders the argument spaces of a tri-linear signature by a flip.
pub fn flip_signature(sig: &Signature, flip: Flip) -> Result<Signature, SignatureError> {
    if sig.arity() != 3 {
        return Err(SignatureError::FlipOnBilinear);
    }
    let src = flip.arg_source();
    let args = sig.args();
    Ok(Signature {
        args: (0..3).map(|k| args[src[k]]).collect(),
        codomain: sig.codomain(),
    })
}

/// The flip (or `None` for the identity) whose action equals applying `a`
/// and then `b`, so `flip_signature(flip_signature(sig, a), b)` equals
/// `flip_signature(sig, flip_compose(a, b))` for every tri-linear `sig`.
pub fn flip_compose(a: Flip, b: Flip) -> Option<Flip> {
    let (sa, sb) = (a.arg_source(), b.arg_source());
    let composed = [sa[sb[0]], sa[sb[1]], sa[sb[2]]];
    Flip::ALL.into_iter().find(|f| f.arg_source() == composed)
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// One letter of an adjoint-flip word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    Star,
    Flip(Flip),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Star => write!(f, "*"),
            Letter::Flip(fl) => write!(f, "{fl}"),
        }
    }
}

/// A finite word over `{*, i, j, r, t, s}`, applied left to right; the empty
/// word denotes the map itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// The six canonical extension words, in the order their limit displays are
/// usually listed: `****`, `i****i`, `j****j`, `r****r`, `t****s`, `s****t`.
pub const CANONICAL_WORDS: [&str; 6] = ["****", "i****i", "j****j", "r****r", "t****s", "s****t"];

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// Parses word text: `*` for the adjoint, `i j r t s` for flips, no
    /// separators. Any other character is rejected with its column.
    pub fn parse(text: &str) -> Result<Self, WordParseError> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            let letter = match c {
                '*' => Letter::Star,
                _ => Letter::Flip(Flip::from_letter(c).ok_or(WordParseError {
                    column: pos + 1,
                    found: c,
                })?),
            };
            letters.push(letter);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        CANONICAL_WORDS.iter().any(|w| self.to_string() == *w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Folds the star and flip signature rules over a word, left to right.
pub fn word_signature(base: &Signature, word: &Word) -> Result<Signature, SignatureError> {
    let mut sig = base.clone();
    for letter in word.letters() {
        sig = match letter {
            Letter::Star => star_signature(&sig),
            Letter::Flip(fl) => flip_signature(&sig, *fl)?,
        };
    }
    Ok(sig)
}

// ---------------------------------------------------------------------------
// Axis permutations: finite-dimensional semantics of a word
// ---------------------------------------------------------------------------

/// How a word rearranges the four tensor axes (three argument axes plus the
/// codomain-coordinate axis) of a tri-linear coordinate tensor.
///
/// `source[a]` is the axis of the original tensor that feeds axis `a` of the
/// rearranged tensor. The adjoint is the 4-cycle `[3,0,1,2]` moving the
/// codomain axis to the front; a flip permutes the three argument axes and
/// fixes the codomain axis. `star_count` records how many `*` letters the
/// word consumed; it does not affect the rearrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisPermutation {
    pub source: [usize; 4],
    pub star_count: usize,
}

impl AxisPermutation {
    pub fn identity() -> Self {
        AxisPermutation {
            source: [0, 1, 2, 3],
            star_count: 0,
        }
    }

    pub fn star() -> Self {
        AxisPermutation {
            source: [3, 0, 1, 2],
            star_count: 1,
        }
    }

    pub fn from_flip(flip: Flip) -> Self {
        let s = flip.arg_source();
        AxisPermutation {
            source: [s[0], s[1], s[2], 3],
            star_count: 0,
        }
    }

    pub fn from_letter(letter: Letter) -> Self {
        match letter {
            Letter::Star => AxisPermutation::star(),
            Letter::Flip(fl) => AxisPermutation::from_flip(fl),
        }
    }

    /// The permutation of applying `self` first and `next` second.
    pub fn then(&self, next: &AxisPermutation) -> AxisPermutation {
        AxisPermutation {
            source: next.source.map(|axis| self.source[axis]),
            star_count: self.star_count + next.star_count,
        }
    }

    /// Whether two words move entries identically, ignoring `star_count`.
    pub fn same_rearrangement(&self, other: &AxisPermutation) -> bool {
        self.source == other.source
    }

    pub fn is_identity_rearrangement(&self) -> bool {
        self.source == [0, 1, 2, 3]
    }
}

/// Composes the axis permutations of a word's letters in application order.
pub fn word_to_axis_permutation(word: &Word) -> AxisPermutation {
    word.letters()
        .iter()
        .fold(AxisPermutation::identity(), |acc, l| {
            acc.then(&AxisPermutation::from_letter(*l))
        })
}

// ---------------------------------------------------------------------------
// Extension orders
// ---------------------------------------------------------------------------

/// One of the three net indices of the limit displays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NetIndex {
    Alpha,
    Beta,
    Gamma,
}

impl NetIndex {
    /// The argument slot (0 = X, 1 = Y, 2 = Z) this index parameterizes.
    pub fn slot(self) -> usize {
        match self {
            NetIndex::Alpha => 0,
            NetIndex::Beta => 1,
            NetIndex::Gamma => 2,
        }
    }
}

impl fmt::Display for NetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NetIndex::Alpha => "α",
            NetIndex::Beta => "β",
            NetIndex::Gamma => "γ",
        };
        write!(f, "{s}")
    }
}

/// An order in which the three iterated limits are taken, outermost first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtensionOrder(pub [NetIndex; 3]);

use NetIndex::{Alpha, Beta, Gamma};

impl ExtensionOrder {
    /// The six orders, listed with their canonical words: `****`, `i****i`,
    /// `j****j`, `r****r`, `t****s`, `s****t`.
    pub const ALL: [ExtensionOrder; 6] = [
        ExtensionOrder([Alpha, Beta, Gamma]),
        ExtensionOrder([Beta, Alpha, Gamma]),
        ExtensionOrder([Alpha, Gamma, Beta]),
        ExtensionOrder([Gamma, Beta, Alpha]),
        ExtensionOrder([Gamma, Alpha, Beta]),
        ExtensionOrder([Beta, Gamma, Alpha]),
    ];

    pub fn outermost(self) -> NetIndex {
        self.0[0]
    }

    pub fn middle(self) -> NetIndex {
        self.0[1]
    }

    pub fn innermost(self) -> NetIndex {
        self.0[2]
    }

    /// The canonical word whose extension this order realizes.
    pub fn canonical_word(self) -> Word {
        let idx = ExtensionOrder::ALL
            .iter()
            .position(|o| *o == self)
            .expect("order is canonical");
        Word::parse(CANONICAL_WORDS[idx]).expect("canonical words parse")
    }
}

impl fmt::Display for ExtensionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Looks up the iterated-limit order of one of the six canonical words.
pub fn extension_order(word: &Word) -> Result<ExtensionOrder, SignatureError> {
    let text = word.to_string();
    CANONICAL_WORDS
        .iter()
        .position(|w| *w == text)
        .map(|idx| ExtensionOrder::ALL[idx])
        .ok_or(SignatureError::NotCanonical(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(text: &str) -> Signature {
        Signature::parse(text).unwrap()
    }

    fn word(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn star_signature_chain_matches_adjoint_items() {
        let base = Signature::canonical_trilinear();
        let s1 = star_signature(&base);
        assert_eq!(s1.to_string(), "W* x X x Y -> Z*");
        let s2 = star_signature(&s1);
        assert_eq!(s2.to_string(), "Z** x W* x X -> Y*");
        let s3 = star_signature(&s2);
        assert_eq!(s3.to_string(), "Y** x Z** x W* -> X*");
        let s4 = star_signature(&s3);
        assert_eq!(s4.to_string(), "X** x Y** x Z** -> W**");
        assert!(s4.is_bidual_trilinear());
    }

    #[test]
    fn star_signature_bilinear_is_arens_rule() {
        let m = sig("X x Y -> S");
        assert_eq!(star_signature(&m).to_string(), "S* x X -> Y*");
        let m3 = star_signature(&star_signature(&star_signature(&m)));
        assert_eq!(m3.to_string(), "X** x Y** -> S**");
    }

    #[test]
    fn flip_signature_matches_defining_lines() {
        let base = Signature::canonical_trilinear();
        assert_eq!(
            flip_signature(&base, Flip::I).unwrap().to_string(),
            "Y x X x Z -> W"
        );
        assert_eq!(
            flip_signature(&base, Flip::J).unwrap().to_string(),
            "X x Z x Y -> W"
        );
        assert_eq!(
            flip_signature(&base, Flip::R).unwrap().to_string(),
            "Z x Y x X -> W"
        );
        assert_eq!(
            flip_signature(&base, Flip::T).unwrap().to_string(),
            "Z x X x Y -> W"
        );
        assert_eq!(
            flip_signature(&base, Flip::S).unwrap().to_string(),
            "Y x Z x X -> W"
        );
    }

    #[test]
    fn flip_is_involution_when_transposition() {
        let base = sig("X* x Y x Z*** -> W");
        let twice = flip_signature(&flip_signature(&base, Flip::I).unwrap(), Flip::I).unwrap();
        assert_eq!(twice, base);
    }

    #[test]
    fn flip_on_bilinear_is_error() {
        let m = sig("X x Y -> S");
        assert_eq!(
            flip_signature(&m, Flip::T),
            Err(SignatureError::FlipOnBilinear)
        );
    }

    #[test]
    fn flip_compose_satisfies_quoted_identities() {
        assert_eq!(flip_compose(Flip::R, Flip::T), Some(Flip::J));
        assert_eq!(flip_compose(Flip::S, Flip::R), Some(Flip::J));
        assert_eq!(flip_compose(Flip::R, Flip::S), Some(Flip::I));
        assert_eq!(flip_compose(Flip::T, Flip::R), Some(Flip::I));
        assert_eq!(flip_compose(Flip::I, Flip::I), None);
        assert_eq!(flip_compose(Flip::T, Flip::S), None);
    }

    /// Oracle: compose two flips by letting each act on a symbolic 3-argument
    /// term and reading off the resulting arrangement.
    #[test]
    fn flip_compose_agrees_with_symbolic_action_on_all_pairs() {
        let base = Signature::canonical_trilinear();
        for a in Flip::ALL {
            for b in Flip::ALL {
                let stepwise = flip_signature(&flip_signature(&base, a).unwrap(), b).unwrap();
                let direct = match flip_compose(a, b) {
                    Some(c) => flip_signature(&base, c).unwrap(),
                    None => base.clone(),
                };
                assert_eq!(stepwise, direct, "({a},{b})");
            }
        }
    }

    #[test]
    fn flips_with_identity_form_s3() {
        // Closure over {id} ∪ flips, order 6, every element has an inverse.
        let elements: Vec<Option<Flip>> = std::iter::once(None)
            .chain(Flip::ALL.into_iter().map(Some))
            .collect();
        assert_eq!(elements.len(), 6);
        let compose = |a: Option<Flip>, b: Option<Flip>| -> Option<Flip> {
            match (a, b) {
                (None, x) | (x, None) => x,
                (Some(a), Some(b)) => flip_compose(a, b),
            }
        };
        for &a in &elements {
            let mut inverses = 0;
            for &b in &elements {
                let c = compose(a, b);
                assert!(elements.contains(&c));
                if c.is_none() {
                    inverses += 1;
                }
                for &d in &elements {
                    assert_eq!(compose(compose(a, b), d), compose(a, compose(b, d)));
                }
            }
            assert_eq!(inverses, 1, "exactly one inverse for {a:?}");
        }
    }

    #[test]
    fn word_signature_examples() {
        let base = Signature::canonical_trilinear();
        assert_eq!(
            word_signature(&base, &word("***")).unwrap().to_string(),
            "Y** x Z** x W* -> X*"
        );
        assert_eq!(
            word_signature(&base, &word("s****t")).unwrap().to_string(),
            "X** x Y** x Z** -> W**"
        );
        assert_eq!(word_signature(&base, &Word::empty()).unwrap(), base);
    }

    #[test]
    fn all_canonical_words_end_at_the_bidual_signature() {
        let base = Signature::canonical_trilinear();
        for text in CANONICAL_WORDS {
            let sig = word_signature(&base, &word(text)).unwrap();
            assert!(sig.is_bidual_trilinear(), "{text} gave {sig}");
        }
    }

    #[test]
    fn four_stars_raise_every_level_by_two_and_keep_order() {
        let cases = ["X x Y x Z -> W", "Z** x W* x X -> Y*", "S x S* x S -> S"];
        for text in cases {
            let base = sig(text);
            let mut out = base.clone();
            for _ in 0..4 {
                out = star_signature(&out);
            }
            for (s0, s1) in base.args().iter().zip(out.args()) {
                assert_eq!(s1.base, s0.base);
                assert_eq!(s1.dual_level, s0.dual_level + 2);
            }
            assert_eq!(out.codomain().base, base.codomain().base);
            assert_eq!(out.codomain().dual_level, base.codomain().dual_level + 2);
        }
    }

    #[test]
    fn word_parse_rejects_bad_letters_with_column() {
        assert_eq!(
            Word::parse("q"),
            Err(WordParseError {
                column: 1,
                found: 'q'
            })
        );
        assert_eq!(
            Word::parse("**x*"),
            Err(WordParseError {
                column: 3,
                found: 'x'
            })
        );
        assert_eq!(Word::parse("").unwrap(), Word::empty());
    }

    #[test]
    fn star_axis_permutation_is_the_four_cycle() {
        assert_eq!(word_to_axis_permutation(&word("*")).source, [3, 0, 1, 2]);
        let four = word_to_axis_permutation(&word("****"));
        assert!(four.is_identity_rearrangement());
        assert_eq!(four.star_count, 4);
    }

    #[test]
    fn canonical_words_act_as_identity_rearrangements() {
        for text in CANONICAL_WORDS {
            assert!(
                word_to_axis_permutation(&word(text)).is_identity_rearrangement(),
                "{text}"
            );
        }
    }

    #[test]
    fn mixed_words_share_rearrangements() {
        let pairs = [("****s**t", "s**t****"), ("t**s****", "****t**s")];
        for (a, b) in pairs {
            let pa = word_to_axis_permutation(&word(a));
            let pb = word_to_axis_permutation(&word(b));
            assert!(pa.same_rearrangement(&pb), "{a} vs {b}");
        }
    }

    #[test]
    fn extension_order_dictionary_is_the_limit_display() {
        let expect = [
            ("****", "αβγ"),
            ("i****i", "βαγ"),
            ("j****j", "αγβ"),
            ("r****r", "γβα"),
            ("t****s", "γαβ"),
            ("s****t", "βγα"),
        ];
        for (w, order) in expect {
            assert_eq!(extension_order(&word(w)).unwrap().to_string(), order);
        }
        // Bijection both ways.
        for o in ExtensionOrder::ALL {
            assert_eq!(extension_order(&o.canonical_word()).unwrap(), o);
        }
        assert!(matches!(
            extension_order(&word("***")),
            Err(SignatureError::NotCanonical(_))
        ));
        assert!(matches!(
            extension_order(&word("s****s")),
            Err(SignatureError::NotCanonical(_))
        ));
    }

    #[test]
    fn signature_roundtrips_through_text() {
        for text in ["X x Y x Z -> W", "W* x X x Y -> Z*", "X** x Y** -> S**"] {
            assert_eq!(sig(text).to_string(), text);
        }
        assert!(Signature::parse("X x Y").is_err());
        assert!(Signature::parse("Q x Y -> W").is_err());
    }
}
