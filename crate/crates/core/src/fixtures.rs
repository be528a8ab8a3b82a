//! Small named webs and foams used throughout the tests, the examples and
//! the command line.

use crate::foam::{parse_foams, PreFoam};
use crate::sign::{Sign, SignSequence};
use crate::web::text::parse_web;
use crate::web::{Endpoint, Polarity, RawWeb, Web};

fn load(src: &str) -> Web {
    parse_web(src).expect("bundled fixture parses").1
}

pub fn y() -> Web {
    load(include_str!("../../../fixtures/y.web"))
}

pub fn arc() -> Web {
    load(include_str!("../../../fixtures/arc.web"))
}

pub fn circle() -> Web {
    load(include_str!("../../../fixtures/circle.web"))
}

pub fn theta() -> Web {
    load(include_str!("../../../fixtures/theta.web"))
}

pub fn h() -> Web {
    load(include_str!("../../../fixtures/h.web"))
}

/// Tail at the source end.
fn directed(raw: &RawWeb, a: usize, b: usize) -> (Endpoint, Endpoint) {
    if raw.vertices[a] == Polarity::Source {
        (Endpoint::Vertex(a), Endpoint::Vertex(b))
    } else {
        (Endpoint::Vertex(b), Endpoint::Vertex(a))
    }
}

fn push_edge(raw: &mut RawWeb, a: usize, b: usize) -> usize {
    let e = directed(raw, a, b);
    raw.edges.push(e);
    raw.edges.len() - 1
}

fn alternate(i: usize) -> Polarity {
    if i % 2 == 0 {
        Polarity::Source
    } else {
        Polarity::Sink
    }
}

/// The closed cube web: two concentric squares joined by four spokes.
pub fn build_cube() -> Web {
    let mut raw = RawWeb::default();
    // u_i outer (0..4), w_i inner (4..8).
    for i in 0..4 {
        raw.vertices.push(alternate(i));
    }
    for i in 0..4 {
        raw.vertices.push(alternate(i + 1));
    }
    let u = |i: usize| i % 4;
    let w = |i: usize| 4 + i % 4;
    let outer: Vec<usize> = (0..4).map(|i| push_edge(&mut raw, u(i), u(i + 1))).collect();
    let inner: Vec<usize> = (0..4).map(|i| push_edge(&mut raw, w(i), w(i + 1))).collect();
    let spoke: Vec<usize> = (0..4).map(|i| push_edge(&mut raw, u(i), w(i))).collect();
    raw.rotations = vec![Vec::new(); 8];
    for i in 0..4 {
        raw.rotations[u(i)] = vec![outer[i], spoke[i], outer[(i + 3) % 4]];
        raw.rotations[w(i)] = vec![spoke[i], inner[i], inner[(i + 3) % 4]];
    }
    raw.validate().expect("cube is a valid web")
}

/// A central polygon with one petal per entry of `petals`, each petal a
/// face with that many sides. Every petal of size `p` carries `p - 4`
/// boundary legs; the boundary line is cut between the last and the first
/// petal. The number of petals must be even and every size even and ≥ 4.
pub fn flower(petals: &[usize]) -> Web {
    let k = petals.len();
    assert!(k >= 2 && k % 2 == 0, "flower needs an even number of petals");
    assert!(petals.iter().all(|&p| p >= 4 && p % 2 == 0), "petal sizes must be even and at least 4");
    let mut raw = RawWeb::default();
    // Hub vertices h_j, then mid vertices m_j.
    for j in 0..k {
        raw.vertices.push(alternate(j));
    }
    for j in 0..k {
        raw.vertices.push(alternate(j + 1));
    }
    let hub = |j: usize| j % k;
    let mid = |j: usize| k + j % k;
    let center: Vec<usize> = (0..k).map(|j| push_edge(&mut raw, hub(j), hub(j + 1))).collect();
    let spoke: Vec<usize> = (0..k).map(|j| push_edge(&mut raw, hub(j), mid(j))).collect();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); 2 * k];
    let mut first = vec![0; k];
    let mut last = vec![0; k];
    let mut signs = Vec::new();
    for (j, &p) in petals.iter().enumerate() {
        // Path j runs from m_j to m_{j+1} through p - 4 leg vertices.
        let mut chain = vec![mid(j)];
        for _ in 0..p - 4 {
            let x = raw.vertices.len();
            raw.vertices.push(raw.vertices[chain[chain.len() - 1]].flip());
            rot.push(Vec::new());
            chain.push(x);
        }
        chain.push(mid(j + 1));
        let path: Vec<usize> = chain.windows(2).map(|w| push_edge(&mut raw, w[0], w[1])).collect();
        first[j] = path[0];
        last[j] = path[path.len() - 1];
        for (t, &x) in chain[1..chain.len() - 1].iter().enumerate() {
            let point = Endpoint::Boundary(signs.len());
            if raw.vertices[x] == Polarity::Source {
                raw.edges.push((Endpoint::Vertex(x), point));
                signs.push(Sign::Plus);
            } else {
                raw.edges.push((point, Endpoint::Vertex(x)));
                signs.push(Sign::Minus);
            }
            rot[x] = vec![raw.edges.len() - 1, path[t + 1], path[t]];
        }
    }
    for j in 0..k {
        rot[hub(j)] = vec![spoke[j], center[j], center[(j + k - 1) % k]];
        rot[mid(j)] = vec![spoke[j], last[(j + k - 1) % k], first[j]];
    }
    raw.rotations = rot;
    raw.boundary = SignSequence::new(signs);
    raw.validate().expect("flower is a valid web")
}

pub fn cube() -> Web {
    load(include_str!("../../../fixtures/cube.web"))
}

/// The flower with six hexagonal petals: 24 vertices, boundary `(+--+)^3`.
pub fn kk_w() -> Web {
    load(include_str!("../../../fixtures/kk_w.web"))
}

/// Six arcs joining points `2i` and `2i + 1` over the boundary of [`kk_w`].
pub fn kk_w0() -> Web {
    load(include_str!("../../../fixtures/kk_w0.web"))
}

/// A flower with one square petal next to the nested central hexagon.
pub fn semi_superficial() -> Web {
    load(include_str!("../../../fixtures/semi_superficial.web"))
}

/// Arcs joining points `2i` and `2i + 1`.
pub fn paired_arcs(eps: &SignSequence) -> Web {
    let mut raw = RawWeb {
        boundary: eps.clone(),
        ..RawWeb::default()
    };
    for i in 0..eps.len() / 2 {
        let (a, b) = (2 * i, 2 * i + 1);
        raw.edges.push(if eps.get(a) == Sign::Minus {
            (Endpoint::Boundary(a), Endpoint::Boundary(b))
        } else {
            (Endpoint::Boundary(b), Endpoint::Boundary(a))
        });
    }
    raw.validate().expect("arcs are a valid web")
}

/// Every named web fixture.
pub fn all_webs() -> Vec<(String, Web)> {
    vec![
        ("y".into(), y()),
        ("arc".into(), arc()),
        ("circle".into(), circle()),
        ("theta".into(), theta()),
        ("h".into(), h()),
        ("cube".into(), cube()),
        ("kk_w".into(), kk_w()),
        ("kk_w0".into(), kk_w0()),
        ("semi_superficial".into(), semi_superficial()),
    ]
}

fn load_foams(src: &str) -> Vec<(String, PreFoam)> {
    parse_foams(src).expect("bundled fixture parses")
}

/// Spheres with 0, 1 and 2 dots.
pub fn spheres() -> Vec<(String, PreFoam)> {
    load_foams(include_str!("../../../fixtures/sphere.foam"))
}

pub fn torus() -> PreFoam {
    load_foams(include_str!("../../../fixtures/torus.foam")).remove(0).1
}

pub fn foam_t() -> PreFoam {
    load_foams(include_str!("../../../fixtures/t.foam")).remove(0).1
}

pub fn theta_foam() -> PreFoam {
    load_foams(include_str!("../../../fixtures/theta.foam")).remove(0).1
}
