//! Plain-text generator lists.
//!
//! Qubits: one operator per line over `I X Y Z`, e.g. `XZI` (spaces between
//! letters allowed, a leading `+`/`-` sign is ignored). Qudits: one operator
//! per line as whitespace-separated site tokens `I`, `X^a`, `Z^b` or
//! `X^aZ^b`; the token forms also work for qubits. Blank lines and text
//! after `#` are skipped.

use super::{StabilizerGroup, SymplecticPauli};
use crate::error::{Error, Result};

pub fn parse_generators(text: &str, d: u32) -> Result<StabilizerGroup> {
    if !(2..=crate::graph::MAX_DIMENSION).contains(&d) {
        return Err(Error::invalid(format!("dimension d = {d} out of range")));
    }
    let mut generators: Vec<SymplecticPauli> = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let mut at = line_start + (line.len() - trimmed.len());
        let mut body = trimmed;
        if let Some(rest) = body.strip_prefix(['+', '-']) {
            body = rest;
            at += 1;
        }
        let (r, s) = if d == 2 && !body.contains('^') {
            parse_letters(body, at)?
        } else {
            parse_tokens(body, at, d)?
        };
        if let Some(first) = generators.first() {
            if first.n() != r.len() {
                return Err(Error::parse(
                    at,
                    format!("operator acts on {} sites, expected {}", r.len(), first.n()),
                ));
            }
        }
        generators.push(SymplecticPauli::new(d, r, s)?);
    }
    let Some(first) = generators.first() else {
        return Err(Error::parse(text.len(), "no generators found"));
    };
    let n = first.n();
    StabilizerGroup::new(n, d, generators)
}

fn parse_letters(body: &str, at: usize) -> Result<(Vec<u8>, Vec<u8>)> {
    let mut r = Vec::new();
    let mut s = Vec::new();
    for (i, c) in body.char_indices() {
        let (x, z) = match c {
            'I' => (0, 0),
            'X' => (1, 0),
            'Y' => (1, 1),
            'Z' => (0, 1),
            c if c.is_whitespace() => continue,
            other => {
                return Err(Error::parse(at + i, format!("unexpected character {other:?}")));
            }
        };
        r.push(x);
        s.push(z);
    }
    Ok((r, s))
}

fn parse_tokens(body: &str, at: usize, d: u32) -> Result<(Vec<u8>, Vec<u8>)> {
    let mut r = Vec::new();
    let mut s = Vec::new();
    let mut pos = 0;
    for token in body.split_whitespace() {
        let start = pos + body[pos..].find(token).unwrap_or(0);
        pos = start + token.len();
        let (x, z) = parse_token(token, at + start, d)?;
        r.push(x);
        s.push(z);
    }
    Ok((r, s))
}

fn parse_token(token: &str, at: usize, d: u32) -> Result<(u8, u8)> {
    if token == "I" {
        return Ok((0, 0));
    }
    let mut x = 0;
    let mut z = 0;
    let mut rest = token;
    let mut seen_x = false;
    let mut seen_z = false;
    while !rest.is_empty() {
        let here = at + token.len() - rest.len();
        let first = rest.chars().next().map_or(1, char::len_utf8);
        let (letter, tail) = rest.split_at(first);
        let digits_len = if let Some(t) = tail.strip_prefix('^') {
            let len = t.chars().take_while(char::is_ascii_digit).count();
            if len == 0 {
                return Err(Error::parse(here + 2, "expected exponent after '^'"));
            }
            len + 1
        } else {
            0
        };
        let exponent = if digits_len == 0 {
            1
        } else {
            tail[1..digits_len].parse::<u64>().map_err(|_| Error::parse(here + 2, "exponent too large"))?
        };
        if exponent >= d as u64 {
            return Err(Error::parse(here, format!("exponent {exponent} is not below d = {d}")));
        }
        match letter {
            "X" if !seen_x && !seen_z => {
                seen_x = true;
                x = exponent as u8;
            }
            "Z" if !seen_z => {
                seen_z = true;
                z = exponent as u8;
            }
            _ => return Err(Error::parse(here, format!("unexpected token {token:?}"))),
        }
        rest = &tail[digits_len..];
    }
    Ok((x, z))
}

pub(crate) fn format_pauli(p: &SymplecticPauli) -> String {
    if p.d() == 2 {
        return p
            .r()
            .iter()
            .zip(p.s())
            .map(|(&x, &z)| match (x, z) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect();
    }
    p.r()
        .iter()
        .zip(p.s())
        .map(|(&x, &z)| match (x, z) {
            (0, 0) => "I".to_string(),
            (x, 0) => format!("X^{x}"),
            (0, z) => format!("Z^{z}"),
            (x, z) => format!("X^{x}Z^{z}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// One operator per line, readable by [`parse_generators`].
pub fn format_generators(group: &StabilizerGroup) -> String {
    group.generators().iter().map(|p| format_pauli(p) + "\n").collect()
}
