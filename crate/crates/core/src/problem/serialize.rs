use std::fmt::Write;


use super::ProblemFile;
use crate::exactla::IntMatrix;
use crate::grpring::{Coefficients, GroupRingElement};

/// Canonical text for a problem. Parsing the output yields an equal value.
pub fn serialize_problem(p: &ProblemFile) -> String {
    let gens = p.generator_names();
    let mut out = String::new();

    if p.meta.title.is_some() || !p.meta.notes.is_empty() {
        out.push_str("[meta]\n");
        if let Some(t) = &p.meta.title {
            writeln!(out, "title = {t}").unwrap();
        }
        for n in &p.meta.notes {
            writeln!(out, "note = {n}").unwrap();
        }
        out.push('\n');
    }

    out.push_str("[group]\n");
    writeln!(out, "generators = {}", gens.join(" ")).unwrap();
    for r in p.presentation.relations() {
        writeln!(out, "relation {} = {}", r.lhs.display(gens), r.rhs.display(gens)).unwrap();
    }
    out.push('\n');

    for rep in &p.representations {
        writeln!(out, "[representation {}]", rep.name()).unwrap();
        writeln!(out, "dim = {}", rep.dim()).unwrap();
        for (g, m) in rep.matrices().iter().enumerate() {
            writeln!(out, "{} = {}", gens[g], matrix_text(m)).unwrap();
        }
        out.push('\n');
    }

    out.push_str("[bindings]\n");
    writeln!(out, "coefficient_rep = {}", p.bindings.coefficient_rep).unwrap();
    writeln!(out, "form_rep = {}", p.bindings.form_rep).unwrap();
    out.push('\n');

    let cx = &p.complex;
    out.push_str("[complex]\n");
    for k in 0..=cx.dim() {
        writeln!(out, "cells {k} = {}", cx.cells(k).join(" ")).unwrap();
    }
    for k in 1..=cx.dim() {
        for (i, name) in cx.cells(k).iter().enumerate() {
            let expr = combination_text(cx.boundary(k, i), cx.cells(k - 1), gens);
            writeln!(out, "boundary {name} = {expr}").unwrap();
        }
    }
    out.push('\n');

    out.push_str("[periods]\n");
    for (i, v) in p.periods.periods.iter().enumerate() {
        let entries: Vec<String> = v.iter().map(ToString::to_string).collect();
        writeln!(out, "{} = [{}]", cx.cells(1)[i], entries.join(", ")).unwrap();
    }
    out.push('\n');

    out.push_str("[diagonal]\n");
    for (c, terms) in p.diagonal.terms.iter().enumerate() {
        for t in terms {
            writeln!(
                out,
                "{} {}= ({} | {} ; {} | {})",
                cx.cells(3)[c],
                t.sign,
                cx.cells(1)[t.front_cell],
                t.front_word.display(gens),
                cx.cells(2)[t.back_cell],
                t.back_word.display(gens),
            )
            .unwrap();
        }
    }
    out
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let r: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn combination_text(row: &[GroupRingElement], cells: &[String], gens: &[String]) -> String {
    let one = GroupRingElement::one();
    let minus_one = -&one;
    let mut terms: Vec<String> = Vec::new();
    for (j, x) in row.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let t = if x == &one {
            cells[j].clone()
        } else if x == &minus_one {
            format!("-{}", cells[j])
        } else {
            format!("({})*{}", x.display(gens), cells[j])
        };
        terms.push(t);
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => write!(out, " - {rest}").unwrap(),
            None => write!(out, " + {t}").unwrap(),
        }
    }
    out
}
