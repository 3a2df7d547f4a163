use mirror_certifier::algebra::{NCPoly, Side};
use mirror_certifier::game::example_game;
use mirror_certifier::ideal::{
    build_mirror_ideal_generators, complete, expand_trace, CompletionOptions,
};

fn main() {
    let g = example_game();
    let m = g.find_mirror_maps().unwrap();
    println!("maps xi={:?} eta={:?} regular={}", m.xi, m.eta, m.regular);
    for side in [Side::Alice, Side::Bob] {
        let gens = build_mirror_ideal_generators(&g, &m, side).unwrap();
        println!("side {:?}: {} generators", side, gens.len());
        let t0 = std::time::Instant::now();
        let rs = complete(&gens, match side { Side::Alice => g.alice_symbols(), Side::Bob => g.bob_symbols() }, &CompletionOptions::with_degree_bound(6)).unwrap();
        println!(
            "  completed in {:?}: contains_one={} rules={} complete={}",
            t0.elapsed(),
            rs.contains_one(),
            rs.rules().len(),
            rs.complete_up_to_bound()
        );
        if rs.contains_one() {
            let gen_polys: Vec<NCPoly> = gens.polys().cloned().collect();
            let expanded = expand_trace(&rs.rules()[0].trace, &gen_polys);
            println!("  trace terms={} expands to {}", rs.rules()[0].trace.len(), expanded);
        }
    }
}
