//! Text formats: `cayley v1` tables and `perm v1` generator lists.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Limits};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| GroupError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Label for a loaded file: its `# name:` header, else the file stem.
fn file_label(path: &Path, text: &str) -> String {
    header_value(text, "name").unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string())
    })
}

/// Value of a `# key: value` comment line, if present.
pub(crate) fn header_value(text: &str, key: &str) -> Option<String> {
    text.lines().find_map(|line| {
        let rest = line.trim().strip_prefix('#')?.trim();
        let (k, v) = rest.split_once(':')?;
        (k.trim() == key).then(|| v.trim().to_string())
    })
}

pub fn load_cayley(path: impl AsRef<Path>, limits: &Limits) -> Result<FiniteGroup> {
    let path = path.as_ref();
    let text = read(path)?;
    parse_cayley(&text, &file_label(path, &text), limits)
}

pub fn load_perm_generators(path: impl AsRef<Path>, limits: &Limits) -> Result<FiniteGroup> {
    let path = path.as_ref();
    let text = read(path)?;
    parse_perm_generators(&text, &file_label(path, &text), limits)
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_magic<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, magic: &str) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l == magic => Ok(()),
        Some((line, l)) => Err(GroupError::Parse {
            line,
            msg: format!("expected '{magic}', found '{l}'"),
        }),
        None => Err(GroupError::Parse {
            line: 1,
            msg: format!("empty file, expected '{magic}'"),
        }),
    }
}

fn expect_key<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, usize)> {
    let (line, l) = lines.next().ok_or(GroupError::Parse {
        line: 2,
        msg: format!("missing '{key}=' line"),
    })?;
    let value = l
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| GroupError::Parse {
            line,
            msg: format!("expected '{key}=<positive integer>', found '{l}'"),
        })?;
    Ok((line, value))
}

fn parse_row(line: usize, l: &str, width: usize, bound: usize) -> Result<Vec<u32>> {
    let row = l
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v < bound)
                .map(|v| v as u32)
                .ok_or_else(|| GroupError::Parse {
                    line,
                    msg: format!("'{t}' is not an index in 0..{bound}"),
                })
        })
        .collect::<Result<Vec<u32>>>()?;
    if row.len() != width {
        return Err(GroupError::Parse {
            line,
            msg: format!("expected {width} entries, found {}", row.len()),
        });
    }
    Ok(row)
}

pub fn parse_cayley(text: &str, label: &str, limits: &Limits) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    expect_magic(&mut lines, "cayley v1")?;
    let (nline, n) = expect_key(&mut lines, "n")?;
    if n > limits.order_cap {
        return Err(GroupError::OrderCap {
            order: n,
            cap: limits.order_cap,
        });
    }
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    let mut last = nline;
    for (line, l) in lines {
        if rows == n {
            return Err(GroupError::Parse {
                line,
                msg: format!("more than {n} rows"),
            });
        }
        table.extend(parse_row(line, l, n, n)?);
        rows += 1;
        last = line;
    }
    if rows != n {
        return Err(GroupError::Parse {
            line: last + 1,
            msg: format!("expected {n} rows, found {rows}"),
        });
    }
    FiniteGroup::from_table_renumbered(label, n, table)
}

/// Serializes a table, with each header line written as a `#` comment.
pub fn write_cayley(g: &FiniteGroup, header: &[String]) -> String {
    let n = g.order();
    let mut out = String::from("cayley v1\n");
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    let _ = writeln!(out, "n={n}");
    for row in g.table().chunks(n) {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Closure of permutation generators, with `(a·b)(i) = a(b(i))`.
pub fn parse_perm_generators(text: &str, label: &str, limits: &Limits) -> Result<FiniteGroup> {
    let mut lines = content_lines(text);
    expect_magic(&mut lines, "perm v1")?;
    let (_, degree) = expect_key(&mut lines, "degree")?;
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for (line, l) in lines {
        let body = l.strip_prefix("gen:").ok_or_else(|| GroupError::Parse {
            line,
            msg: format!("expected 'gen: ...', found '{l}'"),
        })?;
        let perm = parse_row(line, body, degree, degree)?;
        let mut seen = vec![false; degree];
        for &v in &perm {
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(GroupError::Parse {
                    line,
                    msg: format!("{v} appears twice, not a permutation"),
                });
            }
        }
        gens.push(perm);
    }
    let identity: Vec<u32> = (0..degree as u32).collect();
    let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&i| a[i as usize]).collect() };
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let next = compose(&elems[i], g);
            if !index.contains_key(&next) {
                if elems.len() == limits.order_cap {
                    return Err(GroupError::OrderCap {
                        order: elems.len() + 1,
                        cap: limits.order_cap,
                    });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            table.push(index[&compose(a, b)] as u32);
        }
    }
    // Composition of permutations is associative, so the table is a group.
    Ok(FiniteGroup::from_trusted_table(label.to_string(), n, table))
}
