use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::Gen;

/// A finite sequence of generator indices.
///
/// The textual form joins `s<i>` tokens with dots (`s0.s1.s0`); the empty
/// word is written `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, Gen>> {
        self.0.iter().copied()
    }

    pub fn push(&mut self, s: Gen) {
        self.0.push(s);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Compact letter form (`srs`, `rsrt`) used for systems of rank at most 3.
    /// Falls back to the dotted form for larger ranks.
    pub fn pretty(&self, rank: usize) -> String {
        const LETTERS: [char; 3] = ['s', 'r', 't'];
        if rank > 3 {
            return self.to_string();
        }
        if self.is_empty() {
            return "e".to_string();
        }
        self.0.iter().map(|&s| LETTERS[s]).collect()
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl From<&[Gen]> for Word {
    fn from(v: &[Gen]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "s{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Word::empty());
        }
        text.split('.')
            .map(|tok| {
                let tok = tok.trim();
                tok.strip_prefix('s')
                    .and_then(|d| d.parse::<Gen>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad generator token `{tok}` in `{text}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
