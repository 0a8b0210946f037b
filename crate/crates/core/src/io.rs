//! Text formats: `.sg` Cayley tables and `.tgen` transformation generators.

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Parses the `.sg` format: `n <count>`, then `n*n` whitespace-separated
/// indices (line breaks anywhere), then an optional `labels <s1> .. <sn>`
/// line. Lenient on whitespace, strict on index ranges.
pub fn parse_sg(text: &str) -> Result<Semigroup> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            tokens.push((lineno + 1, tok));
        }
    }
    let mut pos = 0;
    let next = |pos: &mut usize| -> Result<(usize, &str)> {
        let t = tokens.get(*pos).copied().ok_or(Error::Parse {
            line: tokens.last().map_or(1, |t| t.0),
            msg: "unexpected end of input".into(),
        })?;
        *pos += 1;
        Ok(t)
    };

    let (line, kw) = next(&mut pos)?;
    if kw != "n" {
        return Err(Error::Parse { line, msg: format!("expected 'n', found {kw:?}") });
    }
    let (line, count) = next(&mut pos)?;
    let n: usize = count
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad element count {count:?}") })?;
    if n == 0 {
        return Err(Error::Parse { line, msg: "element count must be >= 1".into() });
    }

    let mut table = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let (line, tok) = next(&mut pos)?;
        let v: u32 = tok
            .parse()
            .map_err(|_| Error::Parse { line, msg: format!("bad table entry {tok:?}") })?;
        if v as usize >= n {
            return Err(Error::Parse {
                line,
                msg: format!("table entry {v} out of range 0..{n}"),
            });
        }
        table.push(v);
    }

    let labels = if pos < tokens.len() {
        let (line, kw) = next(&mut pos)?;
        if kw != "labels" {
            return Err(Error::Parse { line, msg: format!("expected 'labels', found {kw:?}") });
        }
        let mut ls = Vec::with_capacity(n);
        for _ in 0..n {
            let (_, tok) = next(&mut pos)?;
            ls.push(tok.to_string());
        }
        if pos < tokens.len() {
            let (line, tok) = next(&mut pos)?;
            return Err(Error::Parse { line, msg: format!("trailing token {tok:?}") });
        }
        Some(ls)
    } else {
        None
    };

    Semigroup::new(n, table, labels).map_err(|e| match e {
        Error::InvalidSemigroup(msg) => Error::Parse { line: 1, msg },
        other => other,
    })
}

/// Renders a semigroup in the `.sg` format.
pub fn print_sg(s: &Semigroup) -> String {
    let n = s.size();
    let mut out = format!("n {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| s.mul(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(ls) = s.labels() {
        out.push_str("labels ");
        out.push_str(&ls.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the `.tgen` format: one transformation per line, each a map given
/// by its images on `0..n`; every line must have the same degree.
pub fn parse_tgen(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut degree: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let map: Vec<usize> = toks
            .iter()
            .map(|tok| {
                tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad image {tok:?}"),
                })
            })
            .collect::<Result<_>>()?;
        let deg = *degree.get_or_insert(map.len());
        if map.len() != deg {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected {deg} images, found {}", map.len()),
            });
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= deg) {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("image {bad} out of range 0..{deg}"),
            });
        }
        maps.push(map);
    }
    if maps.is_empty() {
        return Err(Error::Parse { line: 1, msg: "no transformations given".into() });
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sg_roundtrip_on_corpus() {
        for fix in fixtures::corpus() {
            let text = print_sg(&fix.sg);
            let back = parse_sg(&text).unwrap();
            assert_eq!(back.table(), fix.sg.table(), "{}", fix.name);
            assert_eq!(back.labels(), fix.sg.labels());
        }
    }

    #[test]
    fn sg_parse_is_lenient_on_whitespace() {
        let s = parse_sg("n 2\n0 1\n1 0\n").unwrap();
        let t = parse_sg("  n   2   0 1 1\n\n 0 ").unwrap();
        assert_eq!(s.table(), t.table());
    }

    #[test]
    fn sg_parse_errors_carry_line_numbers() {
        match parse_sg("n 2\n0 1\n9 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_sg("m 2").is_err());
        // Non-associative tables are rejected at parse time.
        assert!(parse_sg("n 2\n1 1\n1 0\n").is_err());
    }

    #[test]
    fn tgen_parse() {
        let maps = parse_tgen("1 0\n0 0\n").unwrap();
        assert_eq!(maps, vec![vec![1, 0], vec![0, 0]]);
        assert!(parse_tgen("1 0\n0\n").is_err());
        assert!(parse_tgen("2 0\n").is_err());
        assert!(parse_tgen("").is_err());
    }
}
