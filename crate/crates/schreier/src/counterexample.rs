//! Executable check that no choice of free basis for subgroups of F₂ can
//! commute with relabelling the generators.
//!
//! The instance is as small as it gets: the index-2 subgroup H of
//! even-length words in the free group on {a, b} (the kernel of the map
//! sending both generators to the nontrivial element of Z/2). Swapping a
//! and b lifts to an automorphism of order two that preserves H, so it
//! permutes any canonical generating set of H. Every basis of H has
//! exactly 3 = 2(2−1)+1 elements, an order-two permutation of 3 things has
//! a fixed point, and the only word fixed by the swap is the identity —
//! which no free generating set may contain. So no generating set of H is
//! swap-invariant, and in particular no basis-choosing rule is
//! equivariant. This module verifies each link of that chain concretely.

use thiserror::Error;

use crate::basis::{rank_formula, subgroup_basis};
use crate::covering::{fold_words, Covering, CoveringError};
use crate::word::{enumerate_reduced, Alphabet, FiniteGroup, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CounterexampleError {
    #[error("the swap lift is only defined on rank 2, got rank {rank}")]
    WrongRank { rank: usize },
    #[error("generating set contains a word that is not a member of the subgroup")]
    NotMember { word: Word },
    #[error("the swap does not preserve the subgroup, so equivariance does not apply")]
    SubgroupNotPreserved { word: Word },
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

/// The alphabet {a, b}.
pub fn rank_two_alphabet() -> Alphabet {
    Alphabet::with_names(["a", "b"]).expect("fixed names are valid")
}

/// The covering of the index-2 subgroup of even-length words over {a, b}:
/// the coset action of the kernel of the homomorphism onto Z/2 sending
/// both generators to 1.
pub fn parity_covering() -> Covering {
    Covering::from_hom(rank_two_alphabet(), &FiniteGroup::cyclic(2), &[1, 1])
        .expect("images lie in Z/2")
}

/// The explicit three-word basis {a², ab, ab⁻¹} of the parity kernel.
pub fn explicit_kernel_basis() -> GeneratingSet {
    let al = rank_two_alphabet();
    GeneratingSet::new(
        ["aa", "ab", "ab'"].into_iter().map(|s| al.parse_word(s).expect("fixed words parse")),
    )
    .expect("fixed basis is a valid generating set")
}

/// The automorphism of F₂ induced by transposing the two generators:
/// apply the homomorphism a ↦ b, b ↦ a. An involution that preserves
/// word length.
pub fn transposition_lift(word: &Word) -> Result<Word, CounterexampleError> {
    if word.rank() != 2 {
        return Err(CounterexampleError::WrongRank { rank: word.rank() });
    }
    let images = [
        Word::letter(2, 1, crate::word::Sign::Pos).expect("rank 2"),
        Word::letter(2, 0, crate::word::Sign::Pos).expect("rank 2"),
    ];
    word.hom_apply(&images, 2).map_err(|_: WordError| CounterexampleError::WrongRank {
        rank: word.rank(),
    })
}

/// All reduced words of length at most `max_len` over rank 2 fixed by the
/// transposition lift. The expected answer is always exactly `{1}`.
pub fn fixed_words(max_len: usize) -> Vec<Word> {
    enumerate_reduced(2, max_len)
        .into_iter()
        .filter(|w| transposition_lift(w).expect("rank 2 by construction") == *w)
        .collect()
}

/// A finite set of non-identity words in canonical (sorted, deduplicated)
/// form, so set equality is sequence equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratingSetError {
    #[error("a generating set may not contain the identity")]
    ContainsIdentity,
    #[error("generating set mixes words of rank {left} and rank {right}")]
    MixedRanks { left: usize, right: usize },
}

impl GeneratingSet {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<GeneratingSet, GeneratingSetError> {
        let mut words: Vec<Word> = words.into_iter().collect();
        if let Some(identity) = words.iter().find(|w| w.is_identity()) {
            let _ = identity;
            return Err(GeneratingSetError::ContainsIdentity);
        }
        if let Some(first) = words.first() {
            let rank = first.rank();
            if let Some(other) = words.iter().find(|w| w.rank() != rank) {
                return Err(GeneratingSetError::MixedRanks { left: rank, right: other.rank() });
            }
        }
        words.sort();
        words.dedup();
        Ok(GeneratingSet { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.binary_search(word).is_ok()
    }
}

/// The computed free basis of a connected covering, as a canonical
/// generating set.
pub fn subgroup_basis_generating_set(
    covering: &Covering,
) -> Result<GeneratingSet, CounterexampleError> {
    let basis = subgroup_basis(covering)?;
    GeneratingSet::new(basis.generators().to_vec())
        .map_err(|_| CounterexampleError::NotMember { word: Word::identity(covering.rank()) })
}

/// Check that every word of `gens` lies in the subgroup (error otherwise),
/// then report whether the transposition lift of every generator also
/// lies in it — i.e. whether the swap maps the subgroup into itself.
pub fn preserves_subgroup(
    covering: &Covering,
    gens: &GeneratingSet,
) -> Result<bool, CounterexampleError> {
    for word in gens.words() {
        if !covering.is_member(word)? {
            return Err(CounterexampleError::NotMember { word: word.clone() });
        }
    }
    for word in gens.words() {
        if !covering.is_member(&transposition_lift(word)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the equivariance test for one generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceCheck {
    /// True when the lifted set differs from the original as canonical sets.
    pub violated: bool,
    /// The image of the set under the transposition lift, canonical.
    pub image: GeneratingSet,
    /// Words of the set fixed by the lift. When `violated` is false and
    /// the set has odd size this is non-empty, and by the fixed-word scan
    /// it could only ever contain the identity — which a generating set
    /// excludes, closing the contradiction.
    pub fixed_elements: Vec<Word>,
}

/// Test whether transposing the generators moves a generating set of the
/// subgroup. Precondition: the set lies in the subgroup and the swap
/// preserves the subgroup (errors otherwise, as those make the question
/// meaningless).
pub fn equivariance_violated(
    covering: &Covering,
    gens: &GeneratingSet,
) -> Result<EquivarianceCheck, CounterexampleError> {
    if !preserves_subgroup(covering, gens)? {
        let witness = gens
            .words()
            .iter()
            .find(|w| {
                let lifted = transposition_lift(w).expect("checked rank above");
                !covering.is_member(&lifted).unwrap_or(false)
            })
            .cloned()
            .unwrap_or_else(|| Word::identity(2));
        return Err(CounterexampleError::SubgroupNotPreserved { word: witness });
    }
    let image = GeneratingSet::new(
        gens.words()
            .iter()
            .map(|w| transposition_lift(w).expect("rank checked"))
            .collect::<Vec<_>>(),
    )
    .expect("lift of a valid set is valid: it is injective and fixes only the identity");
    let fixed_elements = gens
        .words()
        .iter()
        .filter(|w| transposition_lift(w).expect("rank checked") == **w)
        .cloned()
        .collect();
    Ok(EquivarianceCheck { violated: image != *gens, image, fixed_elements })
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A list of named pass/fail checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Run the full verification chain for the explicit basis {a², ab, ab⁻¹}
/// of the parity kernel: membership, that it generates exactly the
/// kernel, its size against the index formula, freeness of the folded
/// covering at rank 3, and the failure of swap-equivariance. Failures are
/// report entries, not errors.
pub fn verify_explicit_basis() -> Report {
    let mut report = Report::default();
    let covering = parity_covering();
    let al = covering.alphabet().clone();
    let gens = explicit_kernel_basis();

    let memberships: Vec<(String, bool)> = gens
        .words()
        .iter()
        .map(|w| (al.format_word(w), covering.is_member(w).unwrap_or(false)))
        .collect();
    report.push(
        "membership",
        memberships.iter().all(|(_, ok)| *ok),
        format!(
            "each of {} lies in the even-length subgroup",
            memberships.iter().map(|(s, _)| s.as_str()).collect::<Vec<_>>().join(", ")
        ),
    );

    let folded = fold_words(&al, gens.words());
    let generates = match &folded {
        Ok(c) => c.isomorphic(&covering).unwrap_or(false),
        Err(_) => false,
    };
    report.push(
        "generation",
        generates,
        "folding the set reproduces the index-2 covering exactly".to_string(),
    );

    let expected = rank_formula(2, 2).expect("n=2, m=2 is in range");
    report.push(
        "size",
        gens.len() == expected,
        format!("the set has {} elements; m(n-1)+1 = 2(2-1)+1 = {expected}", gens.len()),
    );

    let folded_rank = folded.as_ref().ok().and_then(|c| subgroup_basis(c).ok().map(|b| b.rank()));
    report.push(
        "freeness",
        folded_rank == Some(expected),
        format!(
            "the folded covering has a free basis of rank {}",
            folded_rank.map_or_else(|| "?".to_string(), |r| r.to_string())
        ),
    );

    let equivariance = equivariance_violated(&covering, &gens);
    let (violated, detail) = match &equivariance {
        Ok(check) => (
            check.violated,
            format!(
                "swapping a and b sends the set to {{{}}}, a different set",
                check.image.words().iter().map(|w| al.format_word(w)).collect::<Vec<_>>().join(", ")
            ),
        ),
        Err(err) => (false, format!("precondition failed: {err}")),
    };
    report.push("equivariance", violated, detail);

    report
}
