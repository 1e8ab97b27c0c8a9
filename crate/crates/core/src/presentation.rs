//! Presentation files:
//!
//! ```text
//! rank = 2
//! gens = a b
//! phi a = b
//! phi b = a
//! ```
//!
//! `#` starts a comment. `gens` defaults to `a b c ...` when omitted.

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::fbc::GroupPresentation;
use crate::word::{Alphabet, Word};

pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut rank: Option<(usize, usize)> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut images: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::Syntax(format!("expected `key = value`, found `{line}`")).at_line(line_no))?;
        let (lhs, rhs) = (lhs.trim(), rhs.trim());
        let keys: Vec<&str> = lhs.split_whitespace().collect();
        match keys.as_slice() {
            ["rank"] => {
                let n = rhs
                    .parse::<usize>()
                    .map_err(|_| Error::Syntax(format!("bad rank `{rhs}`")).at_line(line_no))?;
                rank = Some((n, line_no));
            }
            ["gens"] => {
                let a = Alphabet::new(rhs.split_whitespace()).map_err(|e| e.at_line(line_no))?;
                alphabet = Some(a);
            }
            ["phi", g] => images.push((line_no, g.to_string(), rhs.to_string())),
            _ => return Err(Error::Syntax(format!("unknown key `{lhs}`")).at_line(line_no)),
        }
    }

    let alphabet = match (alphabet, rank) {
        (Some(a), Some((n, line))) if a.rank() != n => {
            return Err(Error::Syntax(format!("rank {n} but {} generators listed", a.rank())).at_line(line));
        }
        (Some(a), _) => a,
        (None, Some((n, _))) => Alphabet::standard(n),
        (None, None) => return Err(Error::Syntax("missing `rank` or `gens`".into())),
    };

    let mut slots: Vec<Option<Word>> = vec![None; alphabet.rank()];
    for (line, g, rhs) in images {
        let idx = alphabet
            .index_of(&g)
            .ok_or_else(|| Error::UnknownGenerator(g.clone()).at_line(line))? as usize;
        if slots[idx].is_some() {
            return Err(Error::Syntax(format!("`phi {g}` given twice")).at_line(line));
        }
        slots[idx] = Some(alphabet.parse_word(&rhs).map_err(|e| e.at_line(line))?);
    }
    let mut imgs = Vec::with_capacity(slots.len());
    for (i, s) in slots.into_iter().enumerate() {
        match s {
            Some(w) => imgs.push(w),
            None => {
                return Err(Error::Syntax(format!("missing `phi {}`", alphabet.names()[i])));
            }
        }
    }
    let phi = Automorphism::new(imgs)?;
    GroupPresentation::new(alphabet, phi)
}

pub fn format_presentation(pres: &GroupPresentation) -> String {
    let ab = pres.alphabet();
    let mut s = format!("rank = {}\ngens = {}\n", ab.rank(), ab.names().join(" "));
    for (name, img) in ab.names().iter().zip(pres.phi().images()) {
        s.push_str(&format!("phi {name} = {}\n", ab.format_word(img)));
    }
    s
}
