use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Vertex label. Atoms are opaque tokens (`"3"`, `"0110"`); products nest pairs;
/// corona hub vertices are `(i,hub)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(String),
    Pair(Box<Label>, Box<Label>),
    Hub,
}

impl Label {
    pub fn index(i: usize) -> Self {
        Label::Atom(i.to_string())
    }

    pub fn atom(s: impl Into<String>) -> Self {
        Label::Atom(s.into())
    }

    pub fn pair(a: Label, b: Label) -> Self {
        Label::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Hub => f.write_str("hub"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let (label, used) = parse_label(bytes, 0)?;
        if used != bytes.len() {
            return Err(Error::input(format!("trailing characters in label {s:?}")));
        }
        Ok(label)
    }
}

fn parse_label(b: &[u8], at: usize) -> Result<(Label, usize), Error> {
    if b.get(at) == Some(&b'(') {
        let (first, at) = parse_label(b, at + 1)?;
        if b.get(at) != Some(&b',') {
            return Err(Error::input("expected ',' in pair label"));
        }
        let (second, at) = parse_label(b, at + 1)?;
        if b.get(at) != Some(&b')') {
            return Err(Error::input("expected ')' closing pair label"));
        }
        return Ok((Label::pair(first, second), at + 1));
    }
    let end = b[at..]
        .iter()
        .position(|c| matches!(c, b'(' | b')' | b',') || c.is_ascii_whitespace())
        .map_or(b.len(), |p| at + p);
    if end == at {
        return Err(Error::input("empty label token"));
    }
    let token = std::str::from_utf8(&b[at..end]).map_err(|e| Error::input(e.to_string()))?;
    let label = if token == "hub" {
        Label::Hub
    } else {
        Label::atom(token)
    };
    Ok((label, end))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_label() -> impl Strategy<Value = Label> {
        let leaf = prop_oneof![
            "[0-9a-z_]{1,6}"
                .prop_filter("reserved", |s| s != "hub")
                .prop_map(Label::Atom),
            Just(Label::Hub),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| Label::pair(a, b))
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(l in arb_label()) {
            let s = l.to_string();
            prop_assert_eq!(s.parse::<Label>().unwrap(), l);
        }
    }

    #[test]
    fn malformed_labels() {
        for bad in ["", "(a,b", "(a b)", "a)", "(,)"] {
            assert!(bad.parse::<Label>().is_err(), "{bad:?}");
        }
    }
}
