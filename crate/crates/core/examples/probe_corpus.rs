use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mirror_certifier::cert::{verify_certificate, Verdict};
use mirror_certifier::game::Game;
use mirror_certifier::sos::{certify, CertifyOptions, SideSelect};

fn random_regular_mirror_game(rng: &mut ChaCha8Rng) -> Game {
    loop {
        let nx = rng.gen_range(1..=3usize);
        let ny = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=3usize);
        let (na, nb) = (n, n);
        let xi: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
        let eta: Vec<usize> = (0..ny).map(|_| rng.gen_range(0..nx)).collect();
        let mut lambda = vec![vec![vec![vec![false; nb]; na]; ny]; nx];
        let mut planted = vec![vec![false; ny]; nx];
        for x in 0..nx {
            planted[x][xi[x]] = true;
        }
        for y in 0..ny {
            planted[eta[y]][y] = true;
        }
        for x in 0..nx {
            for y in 0..ny {
                if planted[x][y] {
                    // permutation wins: answer pair (sigma(b), b)
                    let mut perm: Vec<usize> = (0..n).collect();
                    for i in (1..n).rev() {
                        let j = rng.gen_range(0..=i);
                        perm.swap(i, j);
                    }
                    for b in 0..nb {
                        lambda[x][y][perm[b]][b] = true;
                    }
                } else {
                    for a in 0..na {
                        for b in 0..nb {
                            lambda[x][y][a][b] = rng.gen_bool(0.4);
                        }
                    }
                }
            }
        }
        let g = Game::from_fn(nx, ny, na, nb, |x, y, a, b| lambda[x][y][a][b]);
        if let Some(m) = g.find_mirror_maps() {
            if m.regular {
                return g;
            }
        }
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let opts = CertifyOptions {
        side: SideSelect::Both,
        sos_max_degree: Some(2),
        ..CertifyOptions::default()
    };
    let t_all = std::time::Instant::now();
    let mut certified = 0;
    let mut unknown = 0;
    let mut errors = 0;
    let mut perfect_classical = 0;
    let mut max_time = std::time::Duration::ZERO;
    for i in 0..60 {
        let g = random_regular_mirror_game(&mut rng);
        let report = g.classical_report(10_000_000).unwrap();
        if report.perfect {
            perfect_classical += 1;
        }
        let t = std::time::Instant::now();
        match certify(&g, &opts) {
            Ok(cert) => {
                if cert.verdict == Verdict::NoPerfectStrategy {
                    assert!(!report.perfect, "game {i}: certified a perfect game!");
                    verify_certificate(&g, &cert).expect("certificate must re-verify");
                    certified += 1;
                } else {
                    unknown += 1;
                }
            }
            Err(e) => {
                println!("game {i} error: {e}");
                errors += 1;
            }
        }
        let dt = t.elapsed();
        if dt > max_time {
            max_time = dt;
            println!(
                "game {i}: {}x{}x{}x{} took {:?}",
                g.nx(), g.ny(), g.na(), g.nb(), dt
            );
        }
    }
    println!(
        "total {:?}: certified={certified} unknown={unknown} errors={errors} perfect_classical={perfect_classical}",
        t_all.elapsed()
    );
}
