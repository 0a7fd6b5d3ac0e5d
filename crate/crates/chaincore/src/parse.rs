//! The group and subgroup specification mini-language used on the command
//! line: presets, direct products via `x`, explicit permutation generators
//! in cycle notation, and named or generated subgroups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    self, FiniteGroup, Subgroup, alternating, cyclic, dihedral, group_from_generators,
    quaternion, sl2_3, symmetric,
};

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::SpecParseError {
        pos,
        msg: msg.into(),
    }
}

/// Splits on `sep` at bracket depth zero, keeping each piece's offset.
fn split_top_level(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &s[start..]));
    parts
}

/// Cycle notation like `(0 1)(2 3)` into a permutation on `0..degree`.
/// Degree defaults to max point + 1 when not forced by the caller.
fn parse_cycles(s: &str, base: usize, degree: Option<usize>) -> Result<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.trim();
    let mut offset = base + (s.len() - s.trim_start().len());
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err(offset, "expected '('"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| err(offset, "unclosed cycle"))?;
        let mut cycle = Vec::new();
        for tok in rest[1..close].split_whitespace() {
            let point: usize = tok
                .parse()
                .map_err(|_| err(offset, format!("bad point '{tok}'")))?;
            if cycle.contains(&point) {
                return Err(err(offset, format!("repeated point {point} in cycle")));
            }
            cycle.push(point);
        }
        cycles.push(cycle);
        offset += close + 1;
        let remaining = &rest[close + 1..];
        offset += remaining.len() - remaining.trim_start().len();
        rest = remaining.trim_start();
    }
    let max = cycles.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let n = match degree {
        Some(d) if max > d => return Err(err(base, format!("point {} out of range", max - 1))),
        Some(d) => d,
        None => max.max(1),
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for cycle in &cycles {
        for w in 0..cycle.len() {
            perm[cycle[w]] = cycle[(w + 1) % cycle.len()];
        }
    }
    Ok(perm)
}

fn parse_atom(pos: usize, atom: &str, cap: usize) -> Result<FiniteGroup> {
    let atom = atom.trim();
    if atom.is_empty() {
        return Err(err(pos, "empty group spec"));
    }
    let upper = atom.to_ascii_uppercase();
    if upper == "Q8" {
        return Ok(quaternion());
    }
    if upper == "SL23" {
        return Ok(sl2_3());
    }
    let (letter, digits) = upper.split_at(1);
    let n: usize = digits
        .parse()
        .map_err(|_| err(pos, format!("unknown group '{atom}'")))?;
    let g = match letter {
        "C" if n >= 1 => cyclic(n),
        "S" if (1..=5).contains(&n) => symmetric(n),
        "A" if (3..=5).contains(&n) => alternating(n),
        "D" if n >= 2 => dihedral(n),
        _ => return Err(err(pos, format!("unknown group '{atom}'"))),
    };
    if g.order > cap {
        return Err(Error::CapExceeded(cap));
    }
    Ok(g)
}

/// Grammar: `perm:[cycles,...]`, a preset name, or a product of either
/// joined by `x`.
pub fn parse_group(spec: &str, cap: usize) -> Result<Arc<FiniteGroup>> {
    let mut factors: Vec<FiniteGroup> = Vec::new();
    for (pos, part) in split_top_level(spec, 'x') {
        let part_trim = part.trim();
        if let Some(body) = part_trim.strip_prefix("perm:") {
            let body_pos = pos + part.len() - part.trim_start().len() + 5;
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| err(body_pos, "expected [...] after perm:"))?;
            let mut raw = Vec::new();
            for (gpos, item) in split_top_level(inner, ',') {
                if item.trim().is_empty() {
                    continue;
                }
                raw.push(parse_cycles(item, body_pos + 1 + gpos, None)?);
            }
            let degree = raw.iter().map(|p| p.len()).max().unwrap_or(1);
            let gens: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|mut p| {
                    p.extend(p.len()..degree);
                    p
                })
                .collect();
            factors.push(group_from_generators(&gens, cap)?);
        } else {
            factors.push(parse_atom(pos, part_trim, cap)?);
        }
    }
    let mut it = factors.into_iter();
    let mut g = it.next().ok_or_else(|| err(0, "empty group spec"))?;
    for h in it {
        g = group::direct_product(&g, &h);
        if g.order > cap {
            return Err(Error::CapExceeded(cap));
        }
    }
    Ok(Arc::new(g))
}

/// A generator item inside `gen:[...]`: cycle notation matched against the
/// group's permutation action, or a `*`-word in element labels.
fn resolve_generator(g: &Arc<FiniteGroup>, pos: usize, item: &str) -> Result<usize> {
    let item_trim = item.trim();
    if item_trim.starts_with('(') {
        let perms = g
            .perms
            .as_ref()
            .ok_or_else(|| err(pos, "group has no permutation action"))?;
        let degree = perms.first().map_or(1, |p| p.len());
        let target = parse_cycles(item_trim, pos, Some(degree))?;
        return perms
            .iter()
            .position(|p| p == &target)
            .ok_or_else(|| err(pos, format!("permutation '{item_trim}' not in the group")));
    }
    let mut acc = g.identity;
    for factor in item_trim.split('*') {
        let factor = factor.trim();
        let idx = g
            .labels
            .iter()
            .position(|l| l == factor)
            .ok_or_else(|| err(pos, format!("no element labelled '{factor}'")))?;
        acc = g.mul(acc, idx);
    }
    Ok(acc)
}

/// Grammar: `center`, `derived`, `trivial`, `full`, or `gen:[...]`.
pub fn parse_subgroup(g: &Arc<FiniteGroup>, spec: &str) -> Result<Subgroup> {
    match spec.trim() {
        "center" => Ok(group::center(g)),
        "derived" => Ok(group::derived_subgroup(g)),
        "trivial" => Ok(group::trivial_subgroup(g)),
        "full" => Ok(group::full_subgroup(g)),
        s => {
            let body = s
                .strip_prefix("gen:")
                .ok_or_else(|| err(0, format!("unknown subgroup spec '{s}'")))?;
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| err(4, "expected [...] after gen:"))?;
            let mut gens = Vec::new();
            for (pos, item) in split_top_level(inner, ',') {
                if item.trim().is_empty() {
                    continue;
                }
                gens.push(resolve_generator(g, 5 + pos, item)?);
            }
            Ok(group::subgroup_generated(g, &gens))
        }
    }
}
