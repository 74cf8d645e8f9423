//! Biquivers of the four example algebras and their differentials.

mod common;

use bimodule::bocs::{check_layer, p1_biquiver, Biquiver};
use common::*;

fn arrows(bq: &Biquiver, solid: bool) -> Vec<(String, String, String)> {
    let list = if solid { &bq.solid } else { &bq.dotted };
    list.iter()
        .map(|a| (a.name.clone(), bq.vertices[a.src].name.clone(), bq.vertices[a.dst].name.clone()))
        .collect()
}

fn triple(n: &str, a: &str, b: &str) -> (String, String, String) {
    (n.into(), a.into(), b.into())
}

fn all_zero(bq: &Biquiver) -> bool {
    bq.delta1.iter().chain(&bq.delta2).all(|d| d.is_zero())
}

#[test]
fn three_loops_give_three_parallel_arrows() {
    let q = example1();
    let bq = p1_biquiver(&algebra(&q), &p1(&q));
    assert_eq!(arrows(&bq, true), vec![triple("a*", "1'", "1"), triple("b*", "1'", "1"), triple("c*", "1'", "1")]);
    assert_eq!(bq.dotted.len(), 6);
    assert!(all_zero(&bq));
    check_layer(&bq).unwrap();
}

#[test]
fn two_sources_give_three_arrows_and_zero_differentials() {
    let q = example2();
    let bq = p1_biquiver(&algebra(&q), &p1(&q));
    assert_eq!(arrows(&bq, true), vec![triple("a*", "2'", "1"), triple("b*", "2'", "1"), triple("c*", "2'", "3")]);
    let dotted = arrows(&bq, false);
    for (n, a, b) in [("~a", "2", "1"), ("~b", "2", "1"), ("~c", "2", "3"), ("~a'", "2'", "1'"), ("~c'", "2'", "3'")] {
        assert!(dotted.contains(&triple(n, a, b)), "missing {n}");
    }
    assert!(all_zero(&bq));
}

/// The example names `c = b²`, `d = ab`, and calls the dotted duals of `a`, `b` `u`, `v`.
fn example3_names(text: &str) -> String {
    text.replace("~a", "u").replace("~b", "v").replace("bb*", "c*").replace("ab*", "d*")
}

#[test]
fn two_loop_algebra_differentials_track_alpha() {
    for alpha in [2, 3, -1] {
        let q = example3(alpha);
        let bq = p1_biquiver(&algebra(&q), &p1(&q));
        let names: Vec<String> = bq.solid.iter().map(|a| example3_names(&a.name)).collect();
        assert_eq!(names, ["a*", "b*", "c*", "d*"]);
        let delta = |n: &str| example3_names(&bq.delta_text(n).unwrap());
        assert_eq!(delta("a*"), "0");
        assert_eq!(delta("b*"), "0");
        assert_eq!(delta("bb*"), "v'b* - b*v");
        let (sign, mag) = if alpha < 0 { ("-", (-alpha).to_string()) } else { ("+", alpha.to_string()) };
        let mag = if mag == "1" { String::new() } else { mag };
        let first = if alpha < 0 { format!("-{mag}v'a*") } else { format!("{mag}v'a*") };
        let flip = if sign == "+" { "-" } else { "+" };
        assert_eq!(delta("ab*"), format!("{first} - a*v + u'b* {flip} {mag}b*u"));
        check_layer(&bq).unwrap();
    }
}

#[test]
fn five_arrows_into_a_sink() {
    let q = example4();
    let bq = p1_biquiver(&algebra(&q), &p1(&q));
    let expected: Vec<_> =
        ["a", "b", "c", "d", "f"].iter().enumerate().map(|(k, n)| triple(&format!("{n}*"), &format!("{}'", k + 1), "6")).collect();
    assert_eq!(arrows(&bq, true), expected);
    assert!(all_zero(&bq));
    check_layer(&bq).unwrap();
    let dot = bq.to_dot();
    assert_eq!(dot.matches("style=dashed").count(), bq.dotted.len());
}
