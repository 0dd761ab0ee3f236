//! The line-oriented `.dga` and `.map` text formats.
//!
//! ```text
//! field 2
//! gen a1 1
//! gen b1 0
//! diff a1 = 1 + b1 + b1 b1    # comment
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Dga, DgaMorphism, Field, Generator, Poly, Word};
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        let boundary = ch.is_whitespace() || ch == '+' || ch == '-' || ch == '=';
        if boundary {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
            if !ch.is_whitespace() {
                out.push(Token {
                    text: &line[i..i + 1],
                    column: i + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_int(tok: &Token<'_>, line: usize) -> std::result::Result<i64, ParseError> {
    tok.text.parse::<i64>().map_err(|_| {
        ParseError::new(
            line,
            tok.column,
            format!("expected an integer, found `{}`", tok.text),
        )
    })
}

fn is_number(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

/// Parses `term (+|-) term ...` where a term is an optional coefficient followed
/// by generator names and `1` alone denotes the unit word.
fn parse_terms(
    tokens: &[Token<'_>],
    line: usize,
    end_column: usize,
    field: Field,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> std::result::Result<Poly, ParseError> {
    let mut poly = Poly::zero(field);
    let mut i = 0;
    let mut negate = false;
    if tokens.is_empty() {
        return Err(ParseError::new(line, end_column, "expected a polynomial"));
    }
    if tokens[0].text == "-" {
        negate = true;
        i = 1;
    }
    loop {
        let mut coeff: Option<i64> = None;
        let mut letters = Vec::new();
        let term_start = i;
        while i < tokens.len() && tokens[i].text != "+" && tokens[i].text != "-" {
            let tok = &tokens[i];
            if is_number(tok.text) {
                if i != term_start {
                    return Err(ParseError::new(
                        line,
                        tok.column,
                        format!(
                            "coefficient `{}` must precede the generators of its term",
                            tok.text
                        ),
                    ));
                }
                coeff = Some(parse_int(tok, line)?);
            } else if tok.text == "=" {
                return Err(ParseError::new(line, tok.column, "unexpected `=`"));
            } else {
                match resolve(tok.text) {
                    Some(g) => letters.push(g),
                    None => {
                        return Err(ParseError::new(
                            line,
                            tok.column,
                            format!("unknown generator `{}`", tok.text),
                        ))
                    }
                }
            }
            i += 1;
        }
        if i == term_start {
            let column = tokens.get(i).map_or(end_column, |t| t.column);
            return Err(ParseError::new(line, column, "empty term"));
        }
        let mut c = field.reduce(coeff.unwrap_or(1));
        if negate {
            c = field.neg(c);
        }
        poly.add_term(Word::new(letters), c);
        if i >= tokens.len() {
            break;
        }
        negate = tokens[i].text == "-";
        i += 1;
        if i >= tokens.len() {
            return Err(ParseError::new(line, end_column, "dangling operator"));
        }
    }
    Ok(poly)
}

struct Directive<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

fn directives(text: &str) -> Vec<Directive<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(n, raw)| {
            let line = strip_comment(raw);
            let tokens = tokenize(line);
            (!tokens.is_empty()).then(|| Directive {
                line: n + 1,
                tokens,
                end_column: line.trim_end().len() + 1,
            })
        })
        .collect()
}

fn expect_equals<'a>(d: &'a Directive<'a>) -> std::result::Result<&'a [Token<'a>], ParseError> {
    match d.tokens.get(2) {
        Some(t) if t.text == "=" => Ok(&d.tokens[3..]),
        Some(t) => Err(ParseError::new(d.line, t.column, "expected `=`")),
        None => Err(ParseError::new(d.line, d.end_column, "expected `=`")),
    }
}

pub fn parse_dga(text: &str) -> Result<Dga> {
    let lines = directives(text);
    let mut field: Option<Field> = None;
    let mut gens: Vec<Generator> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();

    for d in &lines {
        let head = &d.tokens[0];
        match head.text {
            "field" => {
                if field.is_some() {
                    return Err(
                        ParseError::new(d.line, head.column, "duplicate `field` line").into(),
                    );
                }
                let tok = d
                    .tokens
                    .get(1)
                    .ok_or_else(|| ParseError::new(d.line, d.end_column, "expected a prime"))?;
                let p = parse_int(tok, d.line)?;
                if d.tokens.len() > 2 {
                    return Err(
                        ParseError::new(d.line, d.tokens[2].column, "unexpected token").into(),
                    );
                }
                let f = u64::try_from(p)
                    .ok()
                    .and_then(|p| Field::new(p).ok())
                    .ok_or_else(|| {
                        ParseError::new(d.line, tok.column, format!("{p} is not a prime"))
                    })?;
                field = Some(f);
            }
            "gen" => {
                let (name, grading) = match (d.tokens.get(1), d.tokens.get(2)) {
                    (Some(n), Some(g)) => (n, g),
                    _ => {
                        return Err(ParseError::new(
                            d.line,
                            d.end_column,
                            "expected `gen <name> <grading>`",
                        )
                        .into())
                    }
                };
                // a negative grading arrives as two tokens: `-` and the digits
                let (grading, extra) = if grading.text == "-" {
                    let digits = d.tokens.get(3).ok_or_else(|| {
                        ParseError::new(d.line, d.end_column, "expected an integer grading")
                    })?;
                    (-parse_int(digits, d.line)?, 4)
                } else {
                    (parse_int(grading, d.line)?, 3)
                };
                if let Some(t) = d.tokens.get(extra) {
                    return Err(ParseError::new(d.line, t.column, "unexpected token").into());
                }
                let grading = i32::try_from(grading).map_err(|_| {
                    ParseError::new(d.line, d.tokens[2].column, "grading out of range")
                })?;
                let g = Generator::new(name.text, grading)
                    .map_err(|e| ParseError::new(d.line, name.column, e.to_string()))?;
                if index.insert(name.text.to_string(), gens.len()).is_some() {
                    return Err(ParseError::new(
                        d.line,
                        name.column,
                        format!("duplicate generator `{}`", name.text),
                    )
                    .into());
                }
                gens.push(g);
            }
            "diff" => {}
            other => {
                return Err(ParseError::new(
                    d.line,
                    head.column,
                    format!("unknown directive `{other}`"),
                )
                .into())
            }
        }
    }

    let field = field.unwrap_or(Field::binary());
    let mut diff: Vec<Option<Poly>> = vec![None; gens.len()];
    let resolve = |name: &str| index.get(name).copied();
    for d in lines.iter().filter(|d| d.tokens[0].text == "diff") {
        let name = d
            .tokens
            .get(1)
            .ok_or_else(|| ParseError::new(d.line, d.end_column, "expected a generator name"))?;
        let g = resolve(name.text).ok_or_else(|| {
            ParseError::new(
                d.line,
                name.column,
                format!("unknown generator `{}`", name.text),
            )
        })?;
        if diff[g].is_some() {
            return Err(ParseError::new(
                d.line,
                d.tokens[0].column,
                format!("duplicate `diff` for `{}`", name.text),
            )
            .into());
        }
        let rhs = expect_equals(d)?;
        diff[g] = Some(parse_terms(rhs, d.line, d.end_column, field, &resolve)?);
    }
    let diff = diff
        .into_iter()
        .map(|p| p.unwrap_or_else(|| Poly::zero(field)))
        .collect();
    Dga::new(field, gens, diff)
}

/// Parses a polynomial written with the generator names of `dga`.
pub fn parse_poly(dga: &Dga, text: &str) -> Result<Poly> {
    let tokens = tokenize(text);
    let resolve = |name: &str| dga.find(name);
    Ok(parse_terms(
        &tokens,
        1,
        text.trim_end().len() + 1,
        dga.field(),
        &resolve,
    )?)
}

/// Canonical text form; `parse_dga(&print_dga(d)) == d`.
pub fn print_dga(dga: &Dga) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", dga.field().p()).unwrap();
    for g in dga.generators() {
        writeln!(out, "gen {} {}", g.name(), g.grading()).unwrap();
    }
    for (g, d) in dga.differentials().iter().enumerate() {
        if !d.is_zero() {
            writeln!(out, "diff {} = {}", dga.name(g), dga.poly_to_string(d)).unwrap();
        }
    }
    out
}

/// Parses `img <source generator> = <polynomial in target generators>` lines.
/// Every source generator needs exactly one image; `0` is the zero polynomial.
pub fn parse_map(source: Arc<Dga>, target: Arc<Dga>, text: &str) -> Result<DgaMorphism> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch(source.field().p(), target.field().p()));
    }
    let field = target.field();
    let mut images: Vec<Option<Poly>> = vec![None; source.len()];
    let resolve = |name: &str| target.find(name);
    for d in directives(text) {
        let head = &d.tokens[0];
        if head.text != "img" {
            return Err(ParseError::new(
                d.line,
                head.column,
                format!("unknown directive `{}`", head.text),
            )
            .into());
        }
        let name = d
            .tokens
            .get(1)
            .ok_or_else(|| ParseError::new(d.line, d.end_column, "expected a generator name"))?;
        let g = source.find(name.text).ok_or_else(|| {
            ParseError::new(
                d.line,
                name.column,
                format!("unknown source generator `{}`", name.text),
            )
        })?;
        if images[g].is_some() {
            return Err(ParseError::new(
                d.line,
                head.column,
                format!("duplicate image for `{}`", name.text),
            )
            .into());
        }
        let rhs = expect_equals(&d)?;
        images[g] = Some(parse_terms(rhs, d.line, d.end_column, field, &resolve)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(g, im)| {
            im.ok_or_else(|| Error::Invalid(format!("no image given for `{}`", source.name(g))))
        })
        .collect::<Result<Vec<_>>>()?;
    DgaMorphism::new(source, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "field 2\ngen a1 1\ngen a2 1\ngen b1 0\ngen b2 0\ngen b3 0\n\
        diff a1 = 1 + b1 + b3 + b1 b2 b3\ndiff a2 = 1 + b1 + b3 + b3 b2 b1\n";

    #[test]
    fn trefoil_prints_back_identically() {
        let d = parse_dga(TREFOIL).unwrap();
        assert_eq!(print_dga(&d), TREFOIL);
        assert_eq!(d.len(), 5);
        assert_eq!(d.field().p(), 2);
    }

    #[test]
    fn comments_signs_and_coefficients() {
        let text = "# signed\nfield 3\ngen x 1  # odd\ngen y 0\ngen z 0\n\
                    diff x = 1 - y z\n";
        let d = parse_dga(text).unwrap();
        assert_eq!(d.poly_to_string(d.differential(0)), "1 + 2 y z");
        let d2 = parse_dga(&print_dga(&d)).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn negative_grading_and_default_field() {
        let d = parse_dga("gen c -1\ngen b 0\ndiff b = c\n").unwrap();
        assert_eq!(d.field().p(), 2);
        assert_eq!(d.grading(0), -1);
    }

    #[test]
    fn undeclared_name_is_reported_with_position() {
        let err = parse_dga("gen x 1\ndiff x = y\n").unwrap_err();
        match err {
            Error::Parse(e) => {
                assert_eq!(e.line, 2);
                assert_eq!(e.column, 10);
                assert!(e.message.contains("`y`"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(parse_dga("gen x 1\ngen x 0\n").is_err());
        assert!(parse_dga("gen x 1\ndiff x = 1\ndiff x = 1\n").is_err());
        assert!(parse_dga("field 2\nfield 3\n").is_err());
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_dga("field 4\n").is_err());
        assert!(parse_dga("gen x\n").is_err());
        assert!(parse_dga("gen x 1\ndiff x 1\n").is_err());
        assert!(parse_dga("gen x 1\ngen y 0\ndiff x = y 2\n").is_err());
        assert!(parse_dga("gen x 1\ndiff x = 1 +\n").is_err());
        assert!(parse_dga("gen x 1\ndiff x = 1 + + 1\n").is_err());
        assert!(parse_dga("bogus\n").is_err());
    }

    #[test]
    fn constant_coefficients() {
        let d = parse_dga("field 5\ngen x 1\ndiff x = 3\n").unwrap();
        assert_eq!(d.differential(0).constant_term().value(), 3);
        assert_eq!(print_dga(&d), "field 5\ngen x 1\ndiff x = 3\n");
    }

    #[test]
    fn maps() {
        let t = Arc::new(parse_dga(TREFOIL).unwrap());
        let text = "img a1 = a1\nimg a2 = a2\nimg b1 = b1\nimg b2 = b2\nimg b3 = b3\n";
        let m = parse_map(t.clone(), t.clone(), text).unwrap();
        assert_eq!(m, DgaMorphism::identity(t.clone()));
        assert!(parse_map(t.clone(), t.clone(), "img a1 = a1\n").is_err());
        let zero = "img a1 = 0\nimg a2 = a2\nimg b1 = b1\nimg b2 = b2\nimg b3 = b3\n";
        assert!(parse_map(t.clone(), t, zero).unwrap().image(0).is_zero());
    }
}
