use std::fmt::Write;

use crate::algebra::TupleIndex;
use crate::error::{Error, Result};

use super::colorset::ColorSet;
use super::map::TetraMap;

/// Parses the header of a file tagged `tag`: `<tag> p=<p> k=<k>` or
/// `<tag> explicit h=<h>`. Returns the color set and the remaining words.
pub(crate) fn parse_set_header<'a>(line_no: usize, line: &'a str, tag: &str) -> Result<(ColorSet, Vec<&'a str>)> {
    let mut words = line.split_whitespace();
    if words.next() != Some(tag) {
        return Err(Error::syntax(line_no, format!("expected `{tag}` header")));
    }
    let rest: Vec<&str> = words.collect();
    let kv = |key: &str| -> Option<&str> { rest.iter().find_map(|w| w.strip_prefix(key)) };
    let num = |key: &str| -> Result<Option<u64>> {
        kv(key)
            .map(|v| v.parse::<u64>().map_err(|_| Error::syntax(line_no, format!("bad value for {key}"))))
            .transpose()
    };
    let set = if rest.first() == Some(&"explicit") {
        let h = num("h=")?.ok_or_else(|| Error::syntax(line_no, "missing h="))?;
        ColorSet::explicit(h as usize)?
    } else {
        let p = num("p=")?.ok_or_else(|| Error::syntax(line_no, "missing p="))?;
        let k = num("k=")?.ok_or_else(|| Error::syntax(line_no, "missing k="))?;
        ColorSet::reduced(p, k as u32)?
    };
    Ok((set, rest))
}

/// Meaningful lines with their 1-based numbers; `#` starts a comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub(crate) fn parse_color(set: &ColorSet, line_no: usize, word: &str) -> Result<u32> {
    let v: u64 = word
        .parse()
        .map_err(|_| Error::syntax(line_no, format!("`{word}` is not an integer")))?;
    set.index_of(v)
        .ok_or_else(|| Error::syntax(line_no, format!("{v} is not an element of {set}")))
}

impl TetraMap {
    /// Parses `tetramap p=<p> k=<k>` / `tetramap explicit h=<h>` followed by
    /// one `x y z -> x' y' z'` line per triple.
    pub fn parse(text: &str) -> Result<TetraMap> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| Error::syntax(1, "empty tetramap file"))?;
        let (set, _) = parse_set_header(line_no, header, "tetramap")?;
        let ix = TupleIndex::new(set.len(), 3);
        let mut table = vec![u32::MAX; ix.size()];
        for (n, line) in lines {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::syntax(n, "expected `x y z -> x' y' z'`"))?;
            let triple = |s: &str| -> Result<Vec<u32>> {
                let t: Vec<u32> = s.split_whitespace().map(|w| parse_color(&set, n, w)).collect::<Result<_>>()?;
                if t.len() != 3 {
                    return Err(Error::syntax(n, "expected three colors"));
                }
                Ok(t)
            };
            let x = ix.encode(&triple(lhs)?);
            if table[x] != u32::MAX {
                return Err(Error::syntax(n, "duplicate row"));
            }
            table[x] = ix.encode(&triple(rhs)?) as u32;
        }
        if let Some(missing) = table.iter().position(|&y| y == u32::MAX) {
            let t: Vec<u64> = ix.decode(missing).into_iter().map(|c| set.value(c)).collect();
            return Err(Error::syntax(0, format!("missing row for {t:?}")));
        }
        TetraMap::from_table(set, table)
    }

    pub fn to_text(&self) -> String {
        let ix = self.index();
        let mut out = format!("tetramap {}\n", self.set().header());
        for (x, &y) in self.table().iter().enumerate() {
            let v = |i: usize| ix.decode(i).into_iter().map(|c| self.set().value(c).to_string()).collect::<Vec<_>>().join(" ");
            writeln!(out, "{} -> {}", v(x), v(y as usize)).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let phi = TetraMap::electric(5, 2).unwrap();
        let text = phi.to_text();
        assert!(text.starts_with("tetramap p=5 k=2\n2 2 2 -> 17 12 17\n"));
        assert_eq!(TetraMap::parse(&text).unwrap(), phi);
        let id = TetraMap::identity(ColorSet::explicit(2).unwrap());
        assert_eq!(TetraMap::parse(&id.to_text()).unwrap(), id);
    }

    #[test]
    fn rejects_duplicates_and_gaps() {
        let text = "tetramap explicit h=1\n0 0 0 -> 0 0 0\n0 0 0 -> 0 0 0\n";
        assert!(matches!(TetraMap::parse(text), Err(Error::Syntax { line: 3, .. })));
        let text = "tetramap explicit h=2\n0 0 0 -> 0 0 0\n";
        assert!(matches!(TetraMap::parse(text), Err(Error::Syntax { .. })));
        let text = "tetramap p=5 k=2\n3 2 2 -> 2 2 2\n";
        assert!(matches!(TetraMap::parse(text), Err(Error::Syntax { line: 2, .. })));
    }
}
