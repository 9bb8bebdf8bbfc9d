//! The discretized module over the covering algebra, operation by operation.
//!
//!     cargo run --release --example module_operations
//!
//! Functions on the covering samples form an algebra; functions on
//! (edge, sample) pairs form a module over it, with an algebra-valued
//! inner product. This example evaluates each operation once on concrete
//! elements and prints the residuals of the identities that hold exactly
//! versus those that hold up to one grid cell.

use mwkit::attractor::solve_invariant_list;
use mwkit::config::load_config;
use mwkit::correspondence::{
    inner_product, left_action, random_algebra_element, random_corr_element, right_action, tensor,
    AlgebraElement, CorrSpace, SampleGrid,
};
use mwkit::graph::EdgeId;
use num_complex::Complex64;
use std::path::Path;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/cantor.cfg");
    let mw = load_config(&path).unwrap().build().unwrap();
    let k = solve_invariant_list(&mw, 3f64.powi(-6), 256).unwrap();
    let grid = SampleGrid::from_invariant_list(&k);
    let s1 = CorrSpace::new(&mw, &grid, 1);
    println!(
        "order-1 module: {} basis slots over {} covering samples",
        s1.total_len(),
        grid.samples(0).len()
    );

    // Edge basis elements pair to 0/1 indicators.
    let d0 = s1.delta(&[EdgeId(0)]);
    let d1 = s1.delta(&[EdgeId(1)]);
    let one = AlgebraElement::constant(&grid, Complex64::new(1.0, 0.0));
    let same = inner_product(&s1, &d0, &d0).unwrap();
    let cross = inner_product(&s1, &d0, &d1).unwrap();
    println!(
        "<delta_0, delta_0> = 1 and <delta_0, delta_1> = 0: sup errors {:.1e}, {:.1e}",
        same.sub(&one).sup_norm(),
        cross.sup_norm()
    );

    // Right action is pointwise, so right-linearity is a float identity.
    let xi = random_corr_element(&s1, 1);
    let eta = random_corr_element(&s1, 2);
    let a = random_algebra_element(&grid, 3);
    let lhs = inner_product(&s1, &xi, &right_action(&s1, &eta, &a)).unwrap();
    let rhs = inner_product(&s1, &xi, &eta).unwrap().mul(&a);
    println!(
        "<xi, eta.a> vs <xi, eta>.a: sup difference {:.1e}",
        lhs.sub(&rhs).sup_norm()
    );

    // The left action reads the algebra at the image point, snapped to the
    // grid, so adjointability is a float identity as well.
    let bxi = left_action(&s1, &a, &xi);
    let l = inner_product(&s1, &bxi, &eta).unwrap();
    let r = inner_product(&s1, &xi, &left_action(&s1, &a.conj(), &eta)).unwrap();
    println!(
        "<a.xi, eta> vs <xi, a*.eta>: sup difference {:.1e}",
        l.sub(&r).sup_norm()
    );

    // Tensor over the algebra balances middle factors up to one grid snap.
    let s2 = CorrSpace::new(&mw, &grid, 2);
    let xia = right_action(&s1, &xi, &a);
    let t1 = tensor(&s2, &s1, &xia, &s1, &xi).unwrap();
    let t2 = tensor(&s2, &s1, &xi, &s1, &left_action(&s1, &a, &xi)).unwrap();
    println!(
        "(xi.a) (x) xi vs xi (x) (a.xi): sup difference {:.1e}",
        t1.sub(&t2).sup_norm()
    );
}
