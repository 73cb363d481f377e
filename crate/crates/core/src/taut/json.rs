use serde_json::{json, Map, Value};

use super::class::{TautClass, Term};
use super::tree::{full_mask, markings, Mask, MarkedTree};

fn label(mask: Mask) -> String {
    markings(mask)
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Nested encoding rooted at the vertex carrying marking 1: legs first,
/// then child subtrees ordered by their smallest marking.
fn partition(tree: &MarkedTree, v: Mask) -> Value {
    let mut items: Vec<Value> = markings(tree.legs_at(v)).into_iter().map(Value::from).collect();
    let mut children: Vec<Mask> = tree.children(v).collect();
    children.sort_by_key(|c| c.trailing_zeros());
    items.extend(children.into_iter().map(|c| partition(tree, c)));
    Value::Array(items)
}

pub fn term_to_json(term: &Term, coeff: &crate::exact::Rational, n: usize) -> Value {
    let deco = &term.decoration;
    let leg_psi: Map<String, Value> = deco
        .leg_psi()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| ((i + 1).to_string(), Value::from(a)))
        .collect();
    let edge_psi: Vec<Value> = deco
        .half_edge_psi()
        .iter()
        .map(|&(home, exp)| json!({ "side": markings(home), "exp": exp }))
        .collect();
    let kappa: Map<String, Value> = deco
        .vertex_kappa()
        .iter()
        .map(|(v, ks)| (label(*v), json!(ks)))
        .collect();
    json!({
        "partition": partition(&term.tree, full_mask(n)),
        "leg_psi": leg_psi,
        "edge_psi": edge_psi,
        "kappa": kappa,
        "coeff": coeff.to_string(),
    })
}

pub fn class_to_json(class: &TautClass) -> Value {
    Value::Array(
        class
            .terms()
            .map(|(t, c)| term_to_json(t, c, class.n()))
            .collect(),
    )
}
