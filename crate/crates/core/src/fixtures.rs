//! Hasse diagrams of the standard example spaces, plus the minimal finite
//! models of the circle and the 2-sphere.

use crate::poset::FiniteSpace;

/// Fixture names accepted by [`by_name`].
pub const NAMES: [&str; 7] = [
    "FIG1_X", "FIG2_X", "FIG3_X", "FIG4_X", "FIG5_X", "S1_MIN", "S2_MIN",
];

fn from_covers(covers: &[(&str, &str)]) -> FiniteSpace {
    let mut points: Vec<&str> = covers.iter().flat_map(|&(g, l)| [g, l]).collect();
    points.sort();
    points.dedup();
    FiniteSpace::build(points, covers.iter().copied()).expect("fixture is a valid poset")
}

/// Six points, two of them maximal; its order complex is a 2-complex.
pub fn fig1() -> FiniteSpace {
    from_covers(&[
        ("T1", "M1"),
        ("T1", "M2"),
        ("T2", "M2"),
        ("M1", "B1"),
        ("M1", "B2"),
        ("M2", "B1"),
        ("M2", "B2"),
    ])
}

/// Ten points of height 2 admitting the qc-reduction on `(a, b)`.
pub fn fig2() -> FiniteSpace {
    from_covers(&[
        ("a", "x1"),
        ("a", "x3"),
        ("b", "x2"),
        ("b", "x3"),
        ("t", "x2"),
        ("t", "x3"),
        ("x1", "p1"),
        ("x1", "p2"),
        ("x2", "p1"),
        ("x2", "p3"),
        ("x2", "p4"),
        ("x3", "p1"),
        ("x3", "p2"),
        ("x3", "p3"),
        ("x3", "p4"),
    ])
}

/// [`fig2`] with `t` covering only `x3`; qc-reducible in two moves, first
/// `(a, b)` and then the relative with `t`. Not among [`NAMES`].
pub fn fig2_reducible() -> FiniteSpace {
    let x = fig2();
    let covers: Vec<(String, String)> = x
        .covers()
        .into_iter()
        .filter(|(g, l)| !(g == "t" && l == "x2"))
        .collect();
    FiniteSpace::build(x.labels().to_vec(), covers).expect("fixture is a valid poset")
}

/// Collapsible, not contractible, and admitting no qc-reduction.
pub fn fig3() -> FiniteSpace {
    from_covers(&[
        ("t1", "m1"),
        ("t1", "m2"),
        ("t2", "m1"),
        ("t2", "m3"),
        ("t3", "m2"),
        ("t3", "m3"),
        ("m1", "b1"),
        ("m1", "b2"),
        ("m1", "b3"),
        ("m2", "b2"),
        ("m2", "b3"),
        ("m2", "b4"),
        ("m3", "b1"),
        ("m3", "b3"),
        ("m3", "b4"),
    ])
}

/// Non-aspherical: removing the a-points `a` and `d` leaves a model of S².
pub fn fig4() -> FiniteSpace {
    from_covers(&[
        ("a", "m1"),
        ("a", "m4"),
        ("b", "m1"),
        ("b", "m2"),
        ("b", "m3"),
        ("b", "m4"),
        ("c", "m2"),
        ("c", "m3"),
        ("c", "m4"),
        ("d", "p1"),
        ("d", "p4"),
        ("m1", "p1"),
        ("m1", "p2"),
        ("m2", "p1"),
        ("m2", "p2"),
        ("m2", "p3"),
        ("m3", "p2"),
        ("m3", "p4"),
        ("m4", "p3"),
        ("m4", "p4"),
    ])
}

/// Aspherical: removing the a-points `a, b, c, d` leaves a space with minimum `x`.
pub fn fig5() -> FiniteSpace {
    from_covers(&[
        ("t1", "m1"),
        ("t1", "m2"),
        ("t2", "m1"),
        ("t2", "m3"),
        ("t3", "m2"),
        ("t3", "m3"),
        ("d", "a"),
        ("d", "b"),
        ("d", "c"),
        ("m1", "a"),
        ("m1", "b"),
        ("m1", "x"),
        ("m2", "b"),
        ("m2", "x"),
        ("m2", "c"),
        ("m3", "a"),
        ("m3", "x"),
        ("m3", "c"),
    ])
}

/// Four-point circle: `a, b > c, d`.
pub fn s1_min() -> FiniteSpace {
    from_covers(&[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
}

/// Six-point sphere: the non-Hausdorff suspension of [`s1_min`].
pub fn s2_min() -> FiniteSpace {
    from_covers(&[
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
        ("n", "a"),
        ("n", "b"),
        ("s", "a"),
        ("s", "b"),
    ])
}

/// Looks a fixture up by name, case-insensitively.
pub fn by_name(name: &str) -> Option<FiniteSpace> {
    Some(match name.to_ascii_uppercase().as_str() {
        "FIG1_X" => fig1(),
        "FIG2_X" => fig2(),
        "FIG3_X" => fig3(),
        "FIG4_X" => fig4(),
        "FIG5_X" => fig5(),
        "S1_MIN" => s1_min(),
        "S2_MIN" => s2_min(),
        _ => return None,
    })
}
