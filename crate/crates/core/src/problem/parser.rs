use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Bindings, Meta, ParseError, ParseErrorKind, ProblemFile};
use crate::eqcomplex::EquivariantComplex;
use crate::exactla::IntMatrix;
use crate::grpring::{
    parse_linear_combination, parse_word, GroupRingElement, Presentation, PresentationError, Relation,
    Representation, SyntaxError, SyntaxErrorKind,
};
use crate::obstruction::{DiagonalApproximation, DiagonalTerm, PeriodAssignment, Sign};
use crate::serde_util::parse_rational;

#[derive(Clone, Copy)]
struct Line<'a> {
    no: usize,
    raw: &'a str,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// 1-based column of `part`, which must be a subslice of this line.
    fn column_of(&self, part: &str) -> usize {
        let off = (part.as_ptr() as usize).saturating_sub(self.raw.as_ptr() as usize).min(self.raw.len());
        self.raw[..off].chars().count() + 1
    }

    fn error(&self, part: &str, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.no, column: self.column_of(part), token: part.trim().to_string(), kind }
    }

    /// `key = value`, both trimmed.
    fn key_value(&self) -> Result<(&'a str, &'a str), ParseError> {
        match self.text.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => Ok((k.trim(), v.trim())),
            _ => Err(self.error(self.text, ParseErrorKind::Syntax("expected `key = value`".into()))),
        }
    }

    fn syntax(&self, part: &str, e: SyntaxError) -> ParseError {
        let base = self.column_of(part) - 1;
        let kind = match e.kind {
            SyntaxErrorKind::UnknownGenerator => ParseErrorKind::UnknownGenerator,
            SyntaxErrorKind::UnknownCell => ParseErrorKind::UnknownCell,
            other => ParseErrorKind::Syntax(other.to_string()),
        };
        ParseError { line: self.no, column: base + e.column, token: e.token, kind }
    }
}

struct Section<'a> {
    name: &'a str,
    arg: Option<&'a str>,
    header: Line<'a>,
    body: Vec<Line<'a>>,
}

const SECTIONS: [&str; 7] = ["meta", "group", "representation", "bindings", "complex", "periods", "diagonal"];

fn split_sections(text: &str) -> Result<Vec<Section<'_>>, ParseError> {
    let mut sections: Vec<Section<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let line = Line { no: i + 1, raw, text: trimmed };
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                return Err(line.error(trimmed, ParseErrorKind::Syntax("unterminated section header".into())));
            };
            let mut words = inner.split_whitespace();
            let name = words.next().unwrap_or("");
            let arg = words.next();
            if !SECTIONS.contains(&name) {
                return Err(line.error(inner, ParseErrorKind::UnknownSection));
            }
            if words.next().is_some() || (name == "representation") != arg.is_some() {
                return Err(line.error(inner, ParseErrorKind::Syntax("malformed section header".into())));
            }
            if sections.iter().any(|s| s.name == name && s.arg == arg) {
                return Err(line.error(inner, ParseErrorKind::Duplicate));
            }
            sections.push(Section { name, arg, header: line, body: Vec::new() });
        } else {
            match sections.last_mut() {
                Some(s) => s.body.push(line),
                None => {
                    return Err(line.error(trimmed, ParseErrorKind::Syntax("content before the first section".into())))
                }
            }
        }
    }
    Ok(sections)
}

fn section<'s, 'a>(sections: &'s [Section<'a>], name: &str) -> Result<&'s Section<'a>, ParseError> {
    sections.iter().find(|s| s.name == name).ok_or_else(|| ParseError {
        line: 0,
        column: 0,
        token: String::new(),
        kind: ParseErrorKind::MissingSection(name.to_string()),
    })
}

/// Parses a `.iaf` problem. Every cross-reference is resolved and every
/// dimension checked; the mathematical checks (relations, duality, ∂∂ = 0,
/// diagonal certification) are left to the validators.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let sections = split_sections(text)?;
    let presentation = parse_group(section(&sections, "group")?)?;
    let gens = presentation.generators().to_vec();

    let mut representations = Vec::new();
    for s in sections.iter().filter(|s| s.name == "representation") {
        representations.push(parse_representation(s, &gens)?);
    }
    if representations.is_empty() {
        return Err(ParseError {
            line: 0,
            column: 0,
            token: String::new(),
            kind: ParseErrorKind::MissingSection("representation".into()),
        });
    }
    let bindings_section = section(&sections, "bindings")?;
    let bindings = parse_bindings(bindings_section, &representations)?;
    let find = |name: &str| representations.iter().find(|r| rep_name(r) == name).expect("resolved");
    let n = rep_dim(find(&bindings.coefficient_rep));
    if rep_dim(find(&bindings.form_rep)) != n {
        return Err(bindings_section.header.error(
            bindings_section.header.text,
            ParseErrorKind::DimensionMismatch("coefficient_rep and form_rep differ in dimension".into()),
        ));
    }

    let complex = parse_complex(section(&sections, "complex")?, &gens)?;
    let periods = parse_periods(section(&sections, "periods")?, &complex, n, &bindings.form_rep)?;
    let diagonal = parse_diagonal(section(&sections, "diagonal")?, &complex, &gens)?;
    let meta = match sections.iter().find(|s| s.name == "meta") {
        Some(s) => parse_meta(s)?,
        None => Meta::default(),
    };
    Ok(ProblemFile { meta, presentation, representations, bindings, complex, periods, diagonal })
}

fn rep_name(r: &Representation) -> &str {
    crate::grpring::Coefficients::name(r)
}

fn rep_dim(r: &Representation) -> usize {
    crate::grpring::Coefficients::dim(r)
}

fn parse_meta(s: &Section<'_>) -> Result<Meta, ParseError> {
    let mut meta = Meta::default();
    for line in &s.body {
        let (k, v) = line.key_value()?;
        match k {
            "title" if meta.title.is_none() => meta.title = Some(v.to_string()),
            "title" => return Err(line.error(k, ParseErrorKind::Duplicate)),
            "note" => meta.notes.push(v.to_string()),
            _ => return Err(line.error(k, ParseErrorKind::UnknownKey)),
        }
    }
    Ok(meta)
}

fn parse_group(s: &Section<'_>) -> Result<Presentation, ParseError> {
    let mut presentation: Option<Presentation> = None;
    for line in &s.body {
        if let Some(rest) = line.text.strip_prefix("relation ") {
            let Some(p) = presentation.as_mut() else {
                return Err(line.error(line.text, ParseErrorKind::Syntax("relations must follow `generators`".into())));
            };
            let gens = p.generators().to_vec();
            let (lhs, rhs) = rest.split_once('=').ok_or_else(|| {
                line.error(rest, ParseErrorKind::Syntax("expected `lhs = rhs`".into()))
            })?;
            let l = parse_word(lhs, &gens).map_err(|e| line.syntax(lhs, e))?;
            let r = parse_word(rhs, &gens).map_err(|e| line.syntax(rhs, e))?;
            p.add_relation(Relation::new(l, r)).expect("words use known generators");
            continue;
        }
        let (k, v) = line.key_value()?;
        if k != "generators" {
            return Err(line.error(k, ParseErrorKind::UnknownKey));
        }
        if presentation.is_some() {
            return Err(line.error(k, ParseErrorKind::Duplicate));
        }
        let names: Vec<String> = v.split_whitespace().map(str::to_string).collect();
        match Presentation::new(names) {
            Ok(p) => presentation = Some(p),
            Err(PresentationError::DuplicateGenerator(g)) => {
                return Err(line.error(v, ParseErrorKind::Duplicate).with_token(g))
            }
            Err(e) => return Err(line.error(v, ParseErrorKind::Syntax(e.to_string()))),
        }
    }
    presentation.ok_or_else(|| {
        s.header.error(s.header.text, ParseErrorKind::MissingEntry("generators".into()))
    })
}

impl ParseError {
    fn with_token(mut self, token: String) -> Self {
        self.token = token;
        self
    }
}

fn parse_representation(s: &Section<'_>, gens: &[String]) -> Result<Representation, ParseError> {
    let name = s.arg.expect("checked by split_sections");
    let mut dim: Option<usize> = None;
    let mut matrices: Vec<Option<IntMatrix>> = vec![None; gens.len()];
    for line in &s.body {
        let (k, v) = line.key_value()?;
        if k == "dim" {
            let d = v.parse::<usize>().ok().filter(|d| *d > 0).ok_or_else(|| {
                line.error(v, ParseErrorKind::Syntax("dimension must be a positive integer".into()))
            })?;
            if dim.replace(d).is_some() {
                return Err(line.error(k, ParseErrorKind::Duplicate));
            }
            continue;
        }
        let Some(g) = gens.iter().position(|x| x == k) else {
            return Err(line.error(k, ParseErrorKind::UnknownGenerator));
        };
        let Some(d) = dim else {
            return Err(line.error(k, ParseErrorKind::Syntax("`dim` must come before the matrices".into())));
        };
        if matrices[g].is_some() {
            return Err(line.error(k, ParseErrorKind::Duplicate));
        }
        let rows = parse_nested(line, v)?;
        let m = to_int_matrix(line, v, &rows, d)?;
        matrices[g] = Some(m);
    }
    let Some(d) = dim else {
        return Err(s.header.error(s.header.text, ParseErrorKind::MissingEntry("dim".into())));
    };
    let mut out = Vec::with_capacity(gens.len());
    for (g, m) in matrices.into_iter().enumerate() {
        match m {
            Some(m) => out.push(m),
            None => {
                return Err(s.header.error(
                    s.header.text,
                    ParseErrorKind::MissingEntry(format!("matrix for generator `{}`", gens[g])),
                ))
            }
        }
    }
    Representation::new(name, d, out, gens)
        .map_err(|e| s.header.error(s.header.text, ParseErrorKind::DimensionMismatch(e.to_string())))
}

fn parse_bindings(s: &Section<'_>, reps: &[Representation]) -> Result<Bindings, ParseError> {
    let mut coefficient = None;
    let mut form = None;
    for line in &s.body {
        let (k, v) = line.key_value()?;
        let slot = match k {
            "coefficient_rep" => &mut coefficient,
            "form_rep" => &mut form,
            _ => return Err(line.error(k, ParseErrorKind::UnknownKey)),
        };
        if !reps.iter().any(|r| rep_name(r) == v) {
            return Err(line.error(v, ParseErrorKind::UnknownRepresentation));
        }
        if slot.replace(v.to_string()).is_some() {
            return Err(line.error(k, ParseErrorKind::Duplicate));
        }
    }
    let missing = |what: &str| s.header.error(s.header.text, ParseErrorKind::MissingEntry(what.to_string()));
    Ok(Bindings {
        coefficient_rep: coefficient.ok_or_else(|| missing("coefficient_rep"))?,
        form_rep: form.ok_or_else(|| missing("form_rep"))?,
    })
}

fn parse_complex(s: &Section<'_>, gens: &[String]) -> Result<EquivariantComplex, ParseError> {
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut boundary_lines: Vec<(Line<'_>, &str, &str)> = Vec::new();
    for line in &s.body {
        if let Some(rest) = line.text.strip_prefix("cells ") {
            let (k, names) = rest
                .split_once('=')
                .ok_or_else(|| line.error(rest, ParseErrorKind::Syntax("expected `cells k = names`".into())))?;
            let k = k.trim();
            let dim: usize = k
                .parse()
                .map_err(|_| line.error(k, ParseErrorKind::Syntax("cell dimension must be an integer".into())))?;
            if dim != cells.len() {
                return Err(line.error(k, ParseErrorKind::Syntax(format!("expected `cells {}`", cells.len()))));
            }
            let list: Vec<String> = names.split_whitespace().map(str::to_string).collect();
            for (i, c) in list.iter().enumerate() {
                let valid = c.chars().next().is_some_and(|ch| ch.is_ascii_alphabetic() || ch == '_')
                    && c.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
                let part = names.split_whitespace().nth(i).unwrap_or(names);
                if !valid {
                    return Err(line.error(part, ParseErrorKind::Syntax("invalid cell name".into())));
                }
                if gens.contains(c) || cells.iter().flatten().any(|x| x == c) || list[..i].contains(c) {
                    return Err(line.error(part, ParseErrorKind::Duplicate));
                }
            }
            cells.push(list);
        } else if let Some(rest) = line.text.strip_prefix("boundary ") {
            let (cell, expr) = rest
                .split_once('=')
                .ok_or_else(|| line.error(rest, ParseErrorKind::Syntax("expected `boundary cell = expression`".into())))?;
            boundary_lines.push((*line, cell.trim(), expr));
        } else {
            return Err(line.error(line.text, ParseErrorKind::UnknownKey));
        }
    }
    if cells.is_empty() {
        return Err(s.header.error(s.header.text, ParseErrorKind::MissingEntry("cells 0".into())));
    }
    let mut boundary: Vec<Vec<Option<Vec<GroupRingElement>>>> =
        cells.iter().enumerate().map(|(k, cs)| vec![if k == 0 { Some(Vec::new()) } else { None }; cs.len()]).collect();
    for (line, cell, expr) in boundary_lines {
        let Some((k, i)) = locate(&cells, cell) else {
            return Err(line.error(cell, ParseErrorKind::UnknownCell));
        };
        if k == 0 {
            return Err(line.error(cell, ParseErrorKind::DimensionMismatch("zero-cells have no boundary".into())));
        }
        if boundary[k][i].is_some() {
            return Err(line.error(cell, ParseErrorKind::Duplicate));
        }
        let mut row = vec![GroupRingElement::zero(); cells[k - 1].len()];
        if expr.trim() != "0" {
            let terms = parse_linear_combination(expr, gens, &cells[k - 1]).map_err(|e| {
                if e.kind == SyntaxErrorKind::UnknownCell {
                    if let Some((j, _)) = locate(&cells, &e.token) {
                        let mut err = line.syntax(expr, e);
                        err.kind = ParseErrorKind::DimensionMismatch(format!(
                            "cell has dimension {j}, the boundary of a {k}-cell needs dimension {}",
                            k - 1
                        ));
                        return err;
                    }
                }
                line.syntax(expr, e)
            })?;
            for (j, x) in terms {
                row[j] = &row[j] + &x;
            }
        }
        boundary[k][i] = Some(row);
    }
    let mut full = Vec::with_capacity(cells.len());
    for (k, rows) in boundary.into_iter().enumerate() {
        let mut out = Vec::with_capacity(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            match r {
                Some(r) => out.push(r),
                None => {
                    return Err(s.header.error(
                        s.header.text,
                        ParseErrorKind::MissingEntry(format!("boundary {}", cells[k][i])),
                    ))
                }
            }
        }
        full.push(out);
    }
    EquivariantComplex::new(cells, full)
        .map_err(|e| s.header.error(s.header.text, ParseErrorKind::Syntax(e.to_string())))
}

fn locate(cells: &[Vec<String>], name: &str) -> Option<(usize, usize)> {
    cells.iter().enumerate().find_map(|(k, cs)| cs.iter().position(|c| c == name).map(|i| (k, i)))
}

fn parse_periods(
    s: &Section<'_>,
    complex: &EquivariantComplex,
    n: usize,
    form_rep: &str,
) -> Result<PeriodAssignment, ParseError> {
    let ones = complex.cells(1);
    let mut periods: Vec<Option<Vec<BigRational>>> = vec![None; ones.len()];
    for line in &s.body {
        let (k, v) = line.key_value()?;
        let Some(i) = ones.iter().position(|c| c == k) else {
            let kind = if complex.find_cell(k).is_some() {
                ParseErrorKind::DimensionMismatch("periods are assigned to one-cells".into())
            } else {
                ParseErrorKind::UnknownCell
            };
            return Err(line.error(k, kind));
        };
        if periods[i].is_some() {
            return Err(line.error(k, ParseErrorKind::Duplicate));
        }
        let nested = parse_nested(line, v)?;
        let Nested::List(items) = nested else {
            return Err(line.error(v, ParseErrorKind::Syntax("expected a vector `[p, q, ...]`".into())));
        };
        if items.len() != n {
            return Err(line.error(
                v,
                ParseErrorKind::DimensionMismatch(format!("period vector has {} entries, expected {n}", items.len())),
            ));
        }
        let mut vec = Vec::with_capacity(n);
        for item in items {
            match item {
                Nested::Atom(a) => vec.push(
                    parse_rational(a)
                        .ok_or_else(|| line.error(a, ParseErrorKind::Syntax("expected a rational `p/q`".into())))?,
                ),
                Nested::List(_) => {
                    return Err(line.error(v, ParseErrorKind::Syntax("expected a flat vector".into())));
                }
            }
        }
        periods[i] = Some(vec);
    }
    let mut out = Vec::with_capacity(ones.len());
    for (i, p) in periods.into_iter().enumerate() {
        out.push(p.ok_or_else(|| {
            s.header.error(s.header.text, ParseErrorKind::MissingEntry(format!("periods for {}", ones[i])))
        })?);
    }
    Ok(PeriodAssignment { dim: n, form_rep: form_rep.to_string(), periods: out })
}

fn parse_diagonal(
    s: &Section<'_>,
    complex: &EquivariantComplex,
    gens: &[String],
) -> Result<DiagonalApproximation, ParseError> {
    let mut terms: Vec<Vec<DiagonalTerm>> = vec![Vec::new(); complex.cells(3).len()];
    for line in &s.body {
        let (cell, sign, rest) = if let Some((c, r)) = line.text.split_once("+=") {
            (c.trim(), Sign::Plus, r)
        } else if let Some((c, r)) = line.text.split_once("-=") {
            (c.trim(), Sign::Minus, r)
        } else {
            return Err(line.error(line.text, ParseErrorKind::Syntax("expected `cell += (...)` or `cell -= (...)`".into())));
        };
        let Some(target) = complex.cells(3).iter().position(|c| c == cell) else {
            let kind = if complex.find_cell(cell).is_some() {
                ParseErrorKind::DimensionMismatch("diagonal terms are listed per three-cell".into())
            } else {
                ParseErrorKind::UnknownCell
            };
            return Err(line.error(cell, kind));
        };
        let body = rest.trim();
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| line.error(body, ParseErrorKind::Syntax("expected `(front | word ; back | word)`".into())))?;
        let (front, back) = inner
            .split_once(';')
            .ok_or_else(|| line.error(inner, ParseErrorKind::Syntax("expected `;` between front and back".into())))?;
        let (front_cell, front_word) = parse_cell_word(line, front, complex, 1, gens)?;
        let (back_cell, back_word) = parse_cell_word(line, back, complex, 2, gens)?;
        terms[target].push(DiagonalTerm { sign, front_cell, front_word, back_cell, back_word });
    }
    Ok(DiagonalApproximation { terms })
}

fn parse_cell_word(
    line: &Line<'_>,
    part: &str,
    complex: &EquivariantComplex,
    dim: usize,
    gens: &[String],
) -> Result<(usize, crate::grpring::Word), ParseError> {
    let (cell, word) = part
        .split_once('|')
        .ok_or_else(|| line.error(part, ParseErrorKind::Syntax("expected `cell | word`".into())))?;
    let name = cell.trim();
    let Some(i) = complex.cells(dim).iter().position(|c| c == name) else {
        let kind = if complex.find_cell(name).is_some() {
            ParseErrorKind::DimensionMismatch(format!("expected a {dim}-cell"))
        } else {
            ParseErrorKind::UnknownCell
        };
        return Err(line.error(name, kind));
    };
    let w = parse_word(word, gens).map_err(|e| line.syntax(word, e))?;
    Ok((i, w))
}

enum Nested<'a> {
    Atom(&'a str),
    List(Vec<Nested<'a>>),
}

/// Bracketed, comma-separated lists of atoms: `[[1,0],[0,1]]`, `[0, 1/2]`.
fn parse_nested<'a>(line: &Line<'a>, text: &'a str) -> Result<Nested<'a>, ParseError> {
    fn skip_ws(s: &str, mut i: usize) -> usize {
        while i < s.len() && s.as_bytes()[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    }
    fn item<'a>(line: &Line<'a>, s: &'a str, i: usize) -> Result<(Nested<'a>, usize), ParseError> {
        let i = skip_ws(s, i);
        if s[i..].starts_with('[') {
            let mut items = Vec::new();
            let mut j = skip_ws(s, i + 1);
            if s[j..].starts_with(']') {
                return Ok((Nested::List(items), j + 1));
            }
            loop {
                let (x, k) = item(line, s, j)?;
                items.push(x);
                let k = skip_ws(s, k);
                match s[k..].chars().next() {
                    Some(',') => j = k + 1,
                    Some(']') => return Ok((Nested::List(items), k + 1)),
                    _ => {
                        let rest = &s[k..];
                        return Err(line.error(
                            if rest.is_empty() { s } else { rest },
                            ParseErrorKind::Syntax("expected `,` or `]`".into()),
                        ));
                    }
                }
            }
        }
        let end = s[i..].find([',', ']', '[']).map_or(s.len(), |e| i + e);
        let atom = s[i..end].trim();
        if atom.is_empty() {
            return Err(line.error(&s[i..], ParseErrorKind::Syntax("expected a number".into())));
        }
        Ok((Nested::Atom(atom), end))
    }
    let (x, end) = item(line, text, 0)?;
    let end = skip_ws(text, end);
    if end != text.len() {
        return Err(line.error(&text[end..], ParseErrorKind::Syntax("trailing input".into())));
    }
    Ok(x)
}

fn to_int_matrix(line: &Line<'_>, text: &str, rows: &Nested<'_>, dim: usize) -> Result<IntMatrix, ParseError> {
    let shape_err = || line.error(text, ParseErrorKind::DimensionMismatch(format!("expected a {dim}x{dim} matrix")));
    let Nested::List(rows) = rows else { return Err(shape_err()) };
    if rows.len() != dim {
        return Err(shape_err());
    }
    let mut data = Vec::with_capacity(dim * dim);
    for r in rows {
        let Nested::List(entries) = r else { return Err(shape_err()) };
        if entries.len() != dim {
            return Err(shape_err());
        }
        for e in entries {
            let Nested::Atom(a) = e else { return Err(shape_err()) };
            let v: BigInt = a
                .parse()
                .map_err(|_| line.error(a, ParseErrorKind::Syntax("expected an integer".into())))?;
            data.push(v);
        }
    }
    Ok(IntMatrix::from_vec(dim, dim, data))
}
