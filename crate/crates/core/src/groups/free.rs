//! Free groups on `k` letters, elements as freely reduced words.
//!
//! Letters are stored as signed integers: `+i` is the `i`-th generator and
//! `-i` its inverse. Text form uses `a, b, c, ...` and upper case for
//! inverses, with `e` for the empty word.

use super::{Group, GroupError};

pub type Word = Vec<i8>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 || rank > 26 {
            return Err(GroupError::InvalidModel(
                "free group rank must be in 1..=26".into(),
            ));
        }
        Ok(Self { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Group for FreeGroup {
    type Elem = Word;

    fn name(&self) -> String {
        format!("F_{}", self.rank)
    }

    fn identity(&self) -> Word {
        Vec::new()
    }

    fn multiply(&self, g: &Word, h: &Word) -> Word {
        let mut cancel = 0;
        while cancel < g.len().min(h.len()) && g[g.len() - 1 - cancel] == -h[cancel] {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(g.len() + h.len() - 2 * cancel);
        out.extend_from_slice(&g[..g.len() - cancel]);
        out.extend_from_slice(&h[cancel..]);
        out
    }

    fn inverse(&self, g: &Word) -> Word {
        g.iter().rev().map(|l| -l).collect()
    }

    fn standard_generators(&self) -> Vec<Word> {
        (1..=self.rank as i8).map(|i| vec![i]).collect()
    }

    fn format(&self, g: &Word) -> String {
        if g.is_empty() {
            return "e".into();
        }
        g.iter()
            .map(|&l| {
                let c = (b'a' + (l.unsigned_abs() - 1)) as char;
                if l < 0 {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    fn parse(&self, text: &str) -> Result<Word, GroupError> {
        let t = text.trim();
        if t == "e" || t.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for ch in t.chars() {
            let lower = ch.to_ascii_lowercase();
            let idx = (lower as u32).wrapping_sub('a' as u32) as usize;
            if !ch.is_ascii_alphabetic() || idx >= self.rank {
                return Err(GroupError::Parse {
                    text: text.to_string(),
                    reason: format!("letter {ch:?} outside alphabet of rank {}", self.rank),
                });
            }
            let l = (idx + 1) as i8;
            let letter = if ch.is_ascii_uppercase() { -l } else { l };
            out = self.multiply(&out, &vec![letter]);
        }
        Ok(out)
    }
}
