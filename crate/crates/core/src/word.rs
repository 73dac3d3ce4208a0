//! Words over a finite alphabet, identities `lhs = rhs`, and the word
//! combinatorics the identity checker is built on: content, restriction
//! to a letter subset, and contiguous-factor occurrence.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A single letter of the alphabet. Restricted to ASCII `[a-zA-Z]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Result<Self, ParseError> {
        if c.is_ascii_alphabetic() {
            Ok(Letter(c as u8))
        } else {
            Err(ParseError::BadLetter { ch: c })
        }
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        s.serialize_str(self.as_char().encode_utf8(&mut buf))
    }
}

/// A finite, possibly empty word. The empty word is the monoid identity
/// and prints as `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Set of letters occurring in the word.
    pub fn content(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// The longest subword whose content lies in `keep`: the subsequence
    /// retaining exactly the positions carrying a letter of `keep`.
    pub fn restrict(&self, keep: &BTreeSet<Letter>) -> Word {
        Word(self.0.iter().copied().filter(|l| keep.contains(l)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// True iff `s` is a contiguous factor of `t`.
///
/// Only factor occurrence is needed by the checker; the scattered-subword
/// relation appears solely through [`Word::restrict`].
///
/// Panics if `s` is empty (the empty word occurs everywhere and is never a
/// meaningful factor query).
pub fn occurs(s: &Word, t: &Word) -> bool {
    assert!(!s.is_empty(), "factor query with empty word");
    if s.len() > t.len() {
        return false;
    }
    t.0.windows(s.len()).any(|w| w == s.letters())
}

/// An identity `lhs = rhs` over the free monoid. Unequal contents are a
/// checkable property, not a construction error.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    /// Union of both sides' contents.
    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut s = self.lhs.content();
        s.extend(self.rhs.content());
        s
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("letter {ch:?} is not in [a-zA-Z]")]
    BadLetter { ch: char },
    #[error("unexpected character {ch:?} at position {pos}")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("missing '=' between the two words")]
    MissingEquals,
    #[error("second '=' at position {pos}; an identity has exactly two sides")]
    ExtraEquals { pos: usize },
    #[error("empty word at position {pos}; write 1 for the empty word")]
    EmptyWord { pos: usize },
    #[error("exponent must be positive at position {pos}")]
    ZeroExponent { pos: usize },
    #[error("missing exponent digits at position {pos}")]
    MissingExponent { pos: usize },
    #[error("1 denotes the empty word and cannot be mixed with letters at position {pos}")]
    MisplacedOne { pos: usize },
    #[error("line {line}: {source}")]
    InFile {
        line: usize,
        #[source]
        source: Box<ParseError>,
    },
}

/// Parse an identity in the grammar
///
/// ```text
/// identity := word "=" word
/// word     := item+ | "1"
/// item     := LETTER ("^" POSINT)?
/// ```
///
/// Whitespace between items is ignored; `#` starts a comment to end of
/// line; exponents expand (`x^3` becomes `xxx`).
pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let bytes: Vec<char> = match text.find('#') {
        Some(cut) => text[..cut].chars().collect(),
        None => text.chars().collect(),
    };
    let mut pos = 0usize;
    let lhs = parse_word(&bytes, &mut pos)?;
    if pos >= bytes.len() || bytes[pos] != '=' {
        return Err(ParseError::MissingEquals);
    }
    pos += 1; // '='
    let rhs = parse_word(&bytes, &mut pos)?;
    if pos < bytes.len() {
        if bytes[pos] == '=' {
            return Err(ParseError::ExtraEquals { pos });
        }
        return Err(ParseError::UnexpectedChar { pos, ch: bytes[pos] });
    }
    Ok(Identity::new(lhs, rhs))
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_word(chars: &[char], pos: &mut usize) -> Result<Word, ParseError> {
    skip_ws(chars, pos);
    let start = *pos;
    // the whole side may be the single token "1"
    if *pos < chars.len() && chars[*pos] == '1' {
        *pos += 1;
        skip_ws(chars, pos);
        if *pos < chars.len() && chars[*pos] != '=' {
            return Err(ParseError::MisplacedOne { pos: *pos });
        }
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() || chars[*pos] == '=' {
            break;
        }
        let ch = chars[*pos];
        if ch == '1' {
            return Err(ParseError::MisplacedOne { pos: *pos });
        }
        if !ch.is_ascii_alphabetic() {
            return Err(ParseError::UnexpectedChar { pos: *pos, ch });
        }
        let letter = Letter(ch as u8);
        *pos += 1;
        let mut exponent = 1usize;
        if *pos < chars.len() && chars[*pos] == '^' {
            *pos += 1;
            let dig_start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == dig_start {
                return Err(ParseError::MissingExponent { pos: dig_start });
            }
            let digits: String = chars[dig_start..*pos].iter().collect();
            exponent = digits
                .parse()
                .map_err(|_| ParseError::MissingExponent { pos: dig_start })?;
            if exponent == 0 {
                return Err(ParseError::ZeroExponent { pos: dig_start });
            }
        }
        letters.extend(std::iter::repeat(letter).take(exponent));
    }
    if letters.is_empty() {
        return Err(ParseError::EmptyWord { pos: start });
    }
    Ok(Word(letters))
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

/// Parse an identity file: one identity per line, blank lines and
/// `#`-comment lines ignored. Returns `(line_number, identity)` pairs.
pub fn parse_identity_file(text: &str) -> Result<Vec<(usize, Identity)>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = match line.find('#') {
            Some(cut) => &line[..cut],
            None => line,
        };
        if body.trim().is_empty() {
            continue;
        }
        let id = parse_identity(body).map_err(|e| ParseError::InFile {
            line: i + 1,
            source: Box::new(e),
        })?;
        out.push((i + 1, id));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word(s.chars().map(|c| Letter(c as u8)).collect())
    }

    fn set(s: &str) -> BTreeSet<Letter> {
        s.chars().map(|c| Letter(c as u8)).collect()
    }

    #[test]
    fn content_examples() {
        assert_eq!(w("xyx").content(), set("xy"));
        assert_eq!(w("").content(), set(""));
        assert_eq!(w("xuuxuzzuxxuuzzxx").content(), set("uxz"));
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(w("xyxz").restrict(&set("xz")), w("xxz"));
        let t = w("xyxz");
        assert_eq!(t.restrict(&t.content()), t);
        // count the x positions directly in the displayed word
        let expected: String = "xuuxuzzuxxuuzzxx".chars().filter(|&c| c == 'x').collect();
        assert_eq!(
            w("xuuxuzzuxxuuzzxx").restrict(&set("x")),
            w(&expected)
        );
        assert_eq!(expected.len(), 6);
    }

    #[test]
    fn occurs_examples() {
        assert!(occurs(&w("xy"), &w("zxyz")));
        assert!(!occurs(&w("xy"), &w("xzy")));
        // restriction creates adjacency
        assert!(occurs(&w("xx"), &w("xyxz").restrict(&set("xz"))));
        assert!(!occurs(&w("xx"), &w("xyxz")));
    }

    #[test]
    #[should_panic(expected = "empty word")]
    fn occurs_rejects_empty_needle() {
        occurs(&Word::empty(), &w("xyz"));
    }

    #[test]
    fn parse_basics() {
        let id = parse_identity("x^3 = x^2").unwrap();
        assert_eq!(id, Identity::new(w("xxx"), w("xx")));
        let id = parse_identity("xy=yx").unwrap();
        assert_eq!(id, Identity::new(w("xy"), w("yx")));
        let id = parse_identity("1 = 1").unwrap();
        assert!(id.lhs.is_empty() && id.rhs.is_empty());
        let id = parse_identity("1 = x").unwrap();
        assert!(id.lhs.is_empty());
        assert_eq!(id.rhs, w("x"));
    }

    #[test]
    fn parse_displayed_identity() {
        let id =
            parse_identity("x^2 t^2 u^2 xx u t^2 u x u^2 x = x^2 t^2 u^2 xt u t^2 u x u^2 x")
                .unwrap();
        assert_eq!(id.lhs, w("xxttuuxxuttuxuux"));
        assert_eq!(id.rhs, w("xxttuuxtuttuxuux"));
    }

    #[test]
    fn parse_comments_and_whitespace() {
        let id = parse_identity("  x y   = y x  # commutativity?").unwrap();
        assert_eq!(id, Identity::new(w("xy"), w("yx")));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_identity("xyx"), Err(ParseError::MissingEquals));
        assert!(matches!(
            parse_identity("x^0 = x"),
            Err(ParseError::ZeroExponent { .. })
        ));
        assert!(matches!(
            parse_identity("x^ = x"),
            Err(ParseError::MissingExponent { .. })
        ));
        assert!(matches!(
            parse_identity("x = y = z"),
            Err(ParseError::ExtraEquals { .. })
        ));
        assert!(matches!(
            parse_identity("x! = x"),
            Err(ParseError::UnexpectedChar { .. })
        ));
        assert!(matches!(
            parse_identity(" = x"),
            Err(ParseError::EmptyWord { .. })
        ));
        assert!(matches!(
            parse_identity("x1 = x"),
            Err(ParseError::MisplacedOne { .. })
        ));
    }

    #[test]
    fn parse_file() {
        let text = "x^3 = x^2\n\n# a comment line\nxy = yx # trailing\n";
        let ids = parse_identity_file(text).unwrap();
        assert_eq!(ids.len(), 2);
        assert_eq!(ids[0].0, 1);
        assert_eq!(ids[1].0, 4);
        assert_eq!(ids[1].1, Identity::new(w("xy"), w("yx")));
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(
            prop_oneof![Just('x'), Just('y'), Just('z'), Just('t')],
            0..=max_len,
        )
        .prop_map(|cs| Word(cs.into_iter().map(|c| Letter(c as u8)).collect()))
    }

    fn arb_subset() -> impl Strategy<Value = BTreeSet<Letter>> {
        proptest::collection::btree_set(
            prop_oneof![Just('x'), Just('y'), Just('z'), Just('t')],
            0..=4,
        )
        .prop_map(|s| s.into_iter().map(|c| Letter(c as u8)).collect())
    }

    proptest! {
        #[test]
        fn restrict_composes_with_intersection(t in arb_word(12), y in arb_subset(), z in arb_subset()) {
            let yz: BTreeSet<Letter> = y.intersection(&z).copied().collect();
            prop_assert_eq!(t.restrict(&y).restrict(&z), t.restrict(&yz));
        }

        #[test]
        fn restrict_length_counts_positions(t in arb_word(12), y in arb_subset()) {
            let count = t.letters().iter().filter(|l| y.contains(l)).count();
            prop_assert_eq!(t.restrict(&y).len(), count);
        }

        #[test]
        fn occurrence_antitone_on_subsets(t in arb_word(12), y1 in arb_subset(), y2 in arb_subset()) {
            // if a factor ab of t restricted to the larger set survives with
            // both letters kept, it survives the smaller restriction too
            let big: BTreeSet<Letter> = y1.union(&y2).copied().collect();
            let small = &y1;
            let rb = t.restrict(&big);
            for pair in rb.letters().windows(2) {
                let (a, b) = (pair[0], pair[1]);
                if small.contains(&a) && small.contains(&b) {
                    let s = Word(vec![a, b]);
                    prop_assert!(occurs(&s, &t.restrict(small)));
                }
            }
        }

        #[test]
        fn print_parse_roundtrip(lhs in arb_word(10), rhs in arb_word(10)) {
            let id = Identity::new(lhs, rhs);
            let reparsed = parse_identity(&id.to_string()).unwrap();
            prop_assert_eq!(reparsed, id);
        }
    }
}
