use std::fmt::Write;

use num_rational::BigRational;

use iaf_core::check::CheckReport;
use iaf_core::eqcomplex::{format_per_cell, EquivariantComplex, TwistedCochain};
use iaf_core::realizable::{combination_text, CohomologySummary, ObstructionReport};

/// Terminal styling of the text output. Only pass/fail markers are colored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Plain,
    Color,
}

impl Style {
    /// `IAF_COLOR=always|never|auto` wins; otherwise `NO_COLOR` disables
    /// color, and `auto` colors only a terminal.
    pub fn from_env(is_terminal: bool) -> Self {
        match std::env::var("IAF_COLOR").ok().as_deref() {
            Some("always") => Style::Color,
            Some("never") => Style::Plain,
            _ if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) => Style::Plain,
            _ if is_terminal => Style::Color,
            _ => Style::Plain,
        }
    }

    fn paint(self, text: &str, code: &str) -> String {
        match self {
            Style::Plain => text.to_string(),
            Style::Color => format!("\x1b[{code}m{text}\x1b[0m"),
        }
    }

    fn ok(self) -> String {
        self.paint("ok", "32")
    }

    fn fail(self) -> String {
        self.paint("FAIL", "31")
    }
}

fn check_lines(out: &mut String, reports: &[CheckReport], style: Style, indent: &str) {
    for r in reports {
        if r.passed() {
            writeln!(out, "{indent}{}: {}", r.check, style.ok()).unwrap();
        } else {
            writeln!(out, "{indent}{}: {}", r.check, style.fail()).unwrap();
            for f in &r.failures {
                writeln!(out, "{indent}  {}: {}", f.location, f.detail).unwrap();
            }
        }
    }
}

pub fn validations(reports: &[CheckReport], style: Style) -> String {
    let mut out = String::new();
    check_lines(&mut out, reports, style, "");
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed} of {} checks passed", reports.len()).unwrap();
    out
}

fn cochain_text(c: &TwistedCochain, cells: &[String]) -> String {
    let parts: Vec<String> = c
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.iter().any(|x| x != &0.into()))
        .map(|(i, v)| {
            let entries: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("{} -> ({})", cells[i], entries.join(", "))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

fn order_text(order: &num_bigint::BigInt) -> String {
    if order == &0.into() {
        "free".into()
    } else {
        format!("order {order}")
    }
}

pub fn cohomology(h: &CohomologySummary, complex: &EquivariantComplex) -> String {
    let mut out = String::new();
    writeln!(out, "H^{}(B; Z^{}_{}) = {}", h.degree, h.dim, h.coefficients, h.shape).unwrap();
    writeln!(out, "per cell: {}", format_per_cell(&h.per_cell)).unwrap();
    if !h.generators.is_empty() {
        writeln!(out, "generators:").unwrap();
    }
    for g in &h.generators {
        writeln!(out, "  {} [{}]: {}", g.name, order_text(&g.order), cochain_text(&g.cochain, complex.cells(h.degree)))
            .unwrap();
    }
    out
}

fn value_text(v: &[BigRational]) -> String {
    match v {
        [x] => x.to_string(),
        _ => format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
    }
}

fn header(out: &mut String, r: &ObstructionReport) {
    if let Some(t) = &r.title {
        writeln!(out, "{t}").unwrap();
    }
    writeln!(out, "input sha256: {}", r.input_sha256).unwrap();
}

fn validation_summary(out: &mut String, r: &ObstructionReport, style: Style) {
    let failed: Vec<CheckReport> = r.validations.iter().filter(|c| !c.passed()).cloned().collect();
    if failed.is_empty() {
        writeln!(out, "validation: {} ({} checks)", style.ok(), r.validations.len()).unwrap();
    } else {
        writeln!(out, "validation: {}", style.fail()).unwrap();
        check_lines(out, &failed, style, "  ");
    }
}

fn obstruction_body(out: &mut String, r: &ObstructionReport) {
    if let Some(h3) = &r.h3 {
        writeln!(out, "H^3(B; Q) = Q^{}", h3.dimension).unwrap();
    }
    let (Some(d), Some(h2)) = (&r.obstruction, &r.h2) else { return };
    writeln!(out, "D : H^2 -> H^3(B; Q), {} x {}", d.target_dim, h2.generators.len()).unwrap();
    for row in &d.matrix {
        let free: Vec<String> = row[..d.free_rank].iter().map(ToString::to_string).collect();
        let tors: Vec<String> = row[d.free_rank..].iter().map(ToString::to_string).collect();
        if tors.is_empty() {
            writeln!(out, "  [{}]", free.join(" ")).unwrap();
        } else {
            writeln!(out, "  [{} | {}]", free.join(" "), tors.join(" ")).unwrap();
        }
    }
    for (dv, g) in r.d_values.iter().zip(&h2.generators) {
        writeln!(out, "  D({}) = {}    [{}]", dv.generator, value_text(&dv.value), order_text(&g.order)).unwrap();
    }
    if d.target_dim == 1 {
        let row = &d.matrix[0];
        let names = h2.names();
        writeln!(out, "D[c] = ({})[B]", combination_text(row, &names)).unwrap();
    }
}

fn realizable_body(out: &mut String, r: &ObstructionReport) {
    let (Some(rs), Some(h2)) = (&r.realizable, &r.h2) else { return };
    let names = h2.names();
    writeln!(out, "R = ker D = {}", rs.shape).unwrap();
    if r.defining_relations.is_empty() {
        writeln!(out, "  no defining relations: every class is realisable").unwrap();
    } else {
        writeln!(out, "defining relations:").unwrap();
        for rel in &r.defining_relations {
            writeln!(out, "  {rel}").unwrap();
        }
    }
    writeln!(out, "generators of R:").unwrap();
    for (i, coords) in rs.coordinates.iter().enumerate() {
        writeln!(out, "  r{} = {}", i + 1, combination_text(coords, &names)).unwrap();
    }
}

pub fn obstruction(r: &ObstructionReport, style: Style) -> String {
    let mut out = String::new();
    header(&mut out, r);
    validation_summary(&mut out, r, style);
    obstruction_body(&mut out, r);
    out
}

pub fn realizable(r: &ObstructionReport, style: Style) -> String {
    let mut out = String::new();
    header(&mut out, r);
    validation_summary(&mut out, r, style);
    realizable_body(&mut out, r);
    out
}

pub fn report(r: &ObstructionReport, style: Style) -> String {
    let mut out = String::new();
    header(&mut out, r);
    out.push('\n');
    writeln!(out, "validation").unwrap();
    check_lines(&mut out, &r.validations, style, "  ");
    if let Some(h2) = &r.h2 {
        out.push('\n');
        writeln!(out, "H^2(B; Z^{}_{}) = {}", h2.dim, h2.coefficients, h2.shape).unwrap();
        writeln!(out, "per cell: {}", format_per_cell(&h2.per_cell)).unwrap();
        let list: Vec<String> = h2.generators.iter().map(|g| format!("{} [{}]", g.name, order_text(&g.order))).collect();
        writeln!(out, "generators: {}", list.join(", ")).unwrap();
    }
    out.push('\n');
    obstruction_body(&mut out, r);
    out.push('\n');
    realizable_body(&mut out, r);
    out.push('\n');
    match (&r.witness, &r.obstruction) {
        (Some(w), _) => {
            writeln!(out, "fake-class witness: {} with D({}) = {}", w.generator, w.generator, value_text(&w.value))
                .unwrap()
        }
        (None, Some(_)) => writeln!(out, "fake-class witness: none, D = 0").unwrap(),
        (None, None) => {}
    }
    out
}
