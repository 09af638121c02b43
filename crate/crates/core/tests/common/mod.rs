#![allow(dead_code)]

use gridram::{CliqueColoring, Color, FullGridColoring, Rectangle, VerticalColoring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vertical(rng: &mut impl Rng, m: usize, n: usize, r: usize) -> VerticalColoring {
    VerticalColoring::from_fn(m, n, r, |_, _, _| Color(rng.gen_range(1..=r as u16))).unwrap()
}

/// Random colouring whose first `k` columns are the constants `1..=k`.
pub fn random_stabilised(rng: &mut impl Rng, m: usize, n: usize, r: usize, k: usize) -> VerticalColoring {
    VerticalColoring::from_fn(m, n, r, |col, _, _| {
        if col <= k {
            Color(col as u16)
        } else {
            Color(rng.gen_range(1..=r as u16))
        }
    })
    .unwrap()
}

pub fn random_full(rng: &mut impl Rng, m: usize, n: usize, r: usize) -> FullGridColoring {
    let v = random_vertical(rng, m, n, r);
    let rows = (0..m)
        .map(|_| CliqueColoring::from_fn(n, |_, _| Color(rng.gen_range(1..=r as u16))))
        .collect();
    FullGridColoring::new(v, rows).unwrap()
}

/// Every alternating rectangle, straight from the definition.
pub fn brute_rectangles(f: &FullGridColoring) -> Vec<Rectangle> {
    let d = f.dims();
    let mut out = Vec::new();
    for a in 1..=d.m {
        for b in a + 1..=d.m {
            for i in 1..=d.n {
                for j in i + 1..=d.n {
                    let v = f.vertical();
                    if v.color(i, a, b) == v.color(j, a, b) && f.horizontal_color(a, i, j) == f.horizontal_color(b, i, j) {
                        out.push(Rectangle::new(a, b, i, j));
                    }
                }
            }
        }
    }
    out
}

/// Edge list (1-based) of the graph on rows where columns `i` and `j` agree.
pub fn brute_agreement(chi: &VerticalColoring, i: usize, j: usize) -> Vec<(usize, usize)> {
    let m = chi.m();
    let mut out = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            if chi.color(i, a, b) == chi.color(j, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Proper `r`-colourability by trying every assignment of `r` colours to `order` vertices.
pub fn brute_colorable(order: usize, edges: &[(usize, usize)], r: usize) -> bool {
    let total = (r as u64).pow(order as u32);
    (0..total).any(|mut code| {
        let mut col = vec![0u64; order + 1];
        for v in col.iter_mut().skip(1) {
            *v = code % r as u64;
            code /= r as u64;
        }
        edges.iter().all(|&(a, b)| col[a] != col[b])
    })
}

pub fn brute_good(chi: &VerticalColoring) -> bool {
    let n = chi.n();
    (1..=n).all(|i| (i + 1..=n).all(|j| brute_colorable(chi.m(), &brute_agreement(chi, i, j), chi.r())))
}

/// All vertical `r`-colourings of `Γ_{m,n}`, in odometer order.
pub fn all_vertical(m: usize, n: usize, r: usize) -> Vec<VerticalColoring> {
    let slots = n * m * (m - 1) / 2;
    let total = (r as u64).pow(slots as u32);
    (0..total)
        .map(|mut code| {
            VerticalColoring::from_fn(m, n, r, |_, _, _| {
                let c = code % r as u64;
                code /= r as u64;
                Color(c as u16 + 1)
            })
            .unwrap()
        })
        .collect()
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gridram")
}

/// Runs the CLI binary; returns (exit code, stdout, stderr).
pub fn cli(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    use std::io::Write;
    use std::process::{Command, Stdio};
    let mut child = Command::new(bin())
        .args(args)
        .env("GRIDRAM_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn gridram");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}
