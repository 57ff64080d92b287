//! Reduced words over a ranked alphabet: the elements of a finitely
//! generated free group, with multiplication by concatenate-and-cancel.
//!
//! Every [`Word`] is kept in normal form (no adjacent letter/inverse pair),
//! so equality is plain sequence equality and all downstream consumers can
//! compare words in linear time.

use std::fmt;

use thiserror::Error;

/// Sign of a letter: a generator or its inverse.
///
/// `Pos` sorts before `Neg` so that the derived order on [`Letter`] is
/// `a < a' < b < b' < …`, the order used by [`enumerate_reduced`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A single letter: generator index plus sign.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(gen: usize) -> Letter {
        Letter { gen, sign: Sign::Pos }
    }

    pub fn neg(gen: usize) -> Letter {
        Letter { gen, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: self.sign.flip() }
    }

    /// True when `self` and `other` cancel to the identity.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter uses generator {gen} but the alphabet has rank {rank}")]
    InvalidLetter { gen: usize, rank: usize },
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("expected {expected} generator images, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    BadElementIndex { index: usize, order: usize },
}

/// A reduced word over an alphabet of the stored rank.
///
/// The letter sequence never contains an adjacent inverse pair; the empty
/// sequence is the group identity. Two words are equal exactly when their
/// ranks and letter sequences are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

/// Push a letter onto a reduced prefix, cancelling against the top.
fn push_cancel(letters: &mut Vec<Letter>, l: Letter) {
    match letters.last() {
        Some(&top) if top.cancels(l) => {
            letters.pop();
        }
        _ => letters.push(l),
    }
}

impl Word {
    /// The identity element (empty word).
    pub fn identity(rank: usize) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Reduce an arbitrary letter sequence to its normal form.
    ///
    /// A single left-to-right stack pass: push each letter, pop when it
    /// cancels the top. Free reduction is confluent, so this agrees with
    /// any other cancellation order.
    pub fn reduce(rank: usize, raw: impl IntoIterator<Item = Letter>) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for l in raw {
            if l.gen >= rank {
                return Err(WordError::InvalidLetter { gen: l.gen, rank });
            }
            push_cancel(&mut letters, l);
        }
        Ok(Word { rank, letters })
    }

    /// One-letter word.
    pub fn letter(rank: usize, gen: usize, sign: Sign) -> Result<Word, WordError> {
        if gen >= rank {
            return Err(WordError::InvalidLetter { gen, rank });
        }
        Ok(Word { rank, letters: vec![Letter { gen, sign }] })
    }

    #[cfg(test)]
    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.iter().all(|l| l.gen < rank));
        debug_assert!(!letters.windows(2).any(|w| w[0].cancels(w[1])));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Synonym for [`Word::is_empty`] that reads as group theory.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Product `self · rhs`, reduced.
    ///
    /// Both inputs are reduced, so cancellation only happens at the seam.
    pub fn multiply(&self, rhs: &Word) -> Result<Word, WordError> {
        if self.rank != rhs.rank {
            return Err(WordError::AlphabetMismatch { left: self.rank, right: rhs.rank });
        }
        let mut letters = self.letters.clone();
        for &l in &rhs.letters {
            push_cancel(&mut letters, l);
        }
        Ok(Word { rank: self.rank, letters })
    }

    /// Group inverse: reverse the letters and flip every sign.
    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word { rank: self.rank, letters }
    }

    /// Apply the homomorphism determined by `images` (one word over the
    /// target alphabet per source generator). Inverse letters map to the
    /// inverse image; the result is reduced.
    pub fn hom_apply(&self, images: &[Word], target_rank: usize) -> Result<Word, WordError> {
        if images.len() != self.rank {
            return Err(WordError::ImageCountMismatch { expected: self.rank, got: images.len() });
        }
        for img in images {
            if img.rank != target_rank {
                return Err(WordError::AlphabetMismatch { left: target_rank, right: img.rank });
            }
        }
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = &images[l.gen];
            match l.sign {
                Sign::Pos => {
                    for &il in &img.letters {
                        push_cancel(&mut letters, il);
                    }
                }
                Sign::Neg => {
                    for &il in img.letters.iter().rev() {
                        push_cancel(&mut letters, il.inverse());
                    }
                }
            }
        }
        Ok(Word { rank: target_rank, letters })
    }

    /// Evaluate under the homomorphism into a finite group sending
    /// generator `i` to the element `images[i]`.
    pub fn eval_in_group(&self, group: &FiniteGroup, images: &[usize]) -> Result<usize, WordError> {
        if images.len() != self.rank {
            return Err(WordError::ImageCountMismatch { expected: self.rank, got: images.len() });
        }
        for &x in images {
            if x >= group.order() {
                return Err(WordError::BadElementIndex { index: x, order: group.order() });
            }
        }
        let mut acc = group.identity();
        for l in &self.letters {
            let g = match l.sign {
                Sign::Pos => images[l.gen],
                Sign::Neg => group.inverse(images[l.gen]),
            };
            acc = group.mul(acc, g);
        }
        Ok(acc)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex: length first, then letter-by-letter (ranks compared last so
/// the order is total across alphabets).
impl Ord for Word {
    fn cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

/// All reduced words of length at most `max_len`, each exactly once, in
/// shortlex order (`ε, g0, g0', g1, …`). The number of words of length
/// `ℓ ≥ 1` is `2n(2n−1)^(ℓ−1)`.
pub fn enumerate_reduced(rank: usize, max_len: usize) -> Vec<Word> {
    let mut all = vec![Word::identity(rank)];
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for prefix in &level {
            for gen in 0..rank {
                for sign in [Sign::Pos, Sign::Neg] {
                    let l = Letter { gen, sign };
                    if prefix.last().map_or(false, |&top| top.cancels(l)) {
                        continue;
                    }
                    let mut w = prefix.clone();
                    w.push(l);
                    next.push(w);
                }
            }
        }
        all.extend(next.iter().cloned().map(|letters| Word { rank, letters }));
        level = next;
        if level.is_empty() {
            break;
        }
    }
    all
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("generator name may not be empty")]
    EmptyName,
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("invalid generator name {0:?} (must not contain whitespace or ', and may not be \"1\")")]
    InvalidName(String),
}

/// The generating set of a free group: a rank plus printable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Alphabet with the default names `g0 … g{n-1}`.
    pub fn new(rank: usize) -> Alphabet {
        Alphabet { names: (0..rank).map(|i| format!("g{i}")).collect() }
    }

    /// Alphabet with explicit names; names must be distinct, non-empty,
    /// free of whitespace and apostrophes, and different from `"1"`
    /// (which denotes the identity in word syntax).
    pub fn with_names<I, S>(names: I) -> Result<Alphabet, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(AlphabetError::EmptyName);
            }
            if name == "1" || name.chars().any(|c| c.is_whitespace() || c == '\'') {
                return Err(AlphabetError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(AlphabetError::DuplicateName(name.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    fn all_single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Render a word in apostrophe syntax: the generator name for a
    /// positive letter, the name followed by `'` for a negative one.
    /// Letters are concatenated when every name is a single character
    /// (`ab'a`), space-separated otherwise (`g0 g1' g0`); the identity
    /// prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        let sep = if self.all_single_char() { "" } else { " " };
        let mut out = String::new();
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(&self.names[l.gen]);
            if l.sign == Sign::Neg {
                out.push('\'');
            }
        }
        out
    }

    /// Parse a word in the syntax emitted by [`Alphabet::format_word`].
    /// The result is reduced. Unknown identifiers are rejected with the
    /// byte offset where they start.
    pub fn parse_word(&self, input: &str) -> Result<Word, ParseWordError> {
        let mut letters = Vec::new();
        let single = self.all_single_char();
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, c) in input.char_indices() {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &input[s..pos]));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &input[s..]));
        }
        for (pos, token) in tokens {
            if token == "1" {
                continue;
            }
            if single {
                self.parse_packed_token(pos, token, &mut letters)?;
            } else {
                let (name, sign) = match token.strip_suffix('\'') {
                    Some(base) => (base, Sign::Neg),
                    None => (token, Sign::Pos),
                };
                let gen = self.lookup(name).ok_or_else(|| ParseWordError {
                    position: pos,
                    kind: ParseWordErrorKind::UnknownGenerator(name.to_string()),
                })?;
                push_cancel(&mut letters, Letter { gen, sign });
            }
        }
        Ok(Word { rank: self.rank(), letters })
    }

    /// Single-character-name mode: letters packed without separators.
    fn parse_packed_token(
        &self,
        token_pos: usize,
        token: &str,
        letters: &mut Vec<Letter>,
    ) -> Result<(), ParseWordError> {
        let mut chars = token.char_indices().peekable();
        while let Some((off, c)) = chars.next() {
            if c == '\'' {
                return Err(ParseWordError {
                    position: token_pos + off,
                    kind: ParseWordErrorKind::DanglingApostrophe,
                });
            }
            let gen = self.lookup(&c.to_string()).ok_or_else(|| ParseWordError {
                position: token_pos + off,
                kind: ParseWordErrorKind::UnknownGenerator(c.to_string()),
            })?;
            let sign = if matches!(chars.peek(), Some(&(_, '\''))) {
                chars.next();
                Sign::Neg
            } else {
                Sign::Pos
            };
            push_cancel(letters, Letter { gen, sign });
        }
        Ok(())
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Adapter for `format!`-style printing of a word under this alphabet.
    pub fn display<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { alphabet: self, word: w }
    }
}

pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_word(self.word))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {position}")]
pub struct ParseWordError {
    pub position: usize,
    pub kind: ParseWordErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordErrorKind {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("apostrophe without a preceding generator")]
    DanglingApostrophe,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteGroupError {
    #[error("a finite group needs at least one element")]
    Empty,
    #[error("multiplication table is not {order}x{order}")]
    BadTableShape { order: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity index {identity} out of range")]
    IdentityOutOfRange { identity: usize },
    #[error("{identity} is not a two-sided identity")]
    NotIdentity { identity: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
}

/// A finite group given by its multiplication table. Intended for small
/// evaluation targets; construction verifies the group axioms by direct
/// search (associativity costs a cubic sweep).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup, FiniteGroupError> {
        let order = table.len();
        if order == 0 {
            return Err(FiniteGroupError::Empty);
        }
        if table.iter().any(|row| row.len() != order) {
            return Err(FiniteGroupError::BadTableShape { order });
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(FiniteGroupError::EntryOutOfRange { row, col, value });
                }
            }
        }
        if identity >= order {
            return Err(FiniteGroupError::IdentityOutOfRange { identity });
        }
        for x in 0..order {
            if table[identity][x] != x || table[x][identity] != x {
                return Err(FiniteGroupError::NotIdentity { identity });
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(FiniteGroupError::NoInverse { element: x })?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(FiniteGroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse })
    }

    /// The cyclic group of order `k` under addition mod `k`.
    pub fn cyclic(k: usize) -> FiniteGroup {
        assert!(k >= 1, "cyclic group needs positive order");
        let table = (0..k).map(|x| (0..k).map(|y| (x + y) % k).collect()).collect();
        FiniteGroup::new(table, 0).expect("cyclic table is a group")
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }
}
