use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use tangency_core::factor::poly_embed;
use tangency_core::field::{FieldDescriptor, FieldElement, SquareClass};
use tangency_core::fundamental::{branch_expand_dehom, check_smooth, inflection_points};
use tangency_core::poly::MultiPoly;
use tangency_core::verify::random_homogeneous;

fn value_in_chart(
    form: &MultiPoly,
    coords: &[FieldElement],
    dehom: usize,
) -> Option<(FieldElement, FieldElement)> {
    let branch = branch_expand_dehom(form, coords, 3, Some(dehom)).ok()?;
    let rf = coords[0].field().clone();
    let lifted = poly_embed(form, &rf).unwrap();
    let fg = lifted.partial(branch.graph_index).eval(&branch.center);
    let rest: Vec<usize> = (0..3).filter(|&i| i != dehom).collect();
    let sigma_neg = branch.param_index == rest[1];
    let three = FieldElement::from_integer(&rf, 3);
    let mut v = three.mul(branch.iii_value()).mul(&fg.pow(4));
    if sigma_neg {
        v = v.neg();
    }
    Some((v, coords[dehom].clone()))
}

fn main() {
    let f = FieldDescriptor::prime(13).unwrap();
    for d in [3u32, 4, 5] {
        let mut rng = ChaCha12Rng::seed_from_u64(5150);
        let mut samples = 0;
        println!("--- d = {}", d);
        while samples < 10 {
            let form = random_homogeneous(&f, 3, d, &mut rng);
            if !check_smooth(&form).unwrap_or(false) { continue; }
            let flexes = match inflection_points(&form) { Ok(x) => x, Err(_) => continue };
            for (pt, mult) in &flexes {
                if *mult > 1 || pt.residue_degree() != 1 { continue; }
                let coords = pt.coords();
                for i in 0..3 {
                    for j in i+1..3 {
                        if coords[i].is_zero() || coords[j].is_zero() { continue; }
                        let (vi, zi) = match value_in_chart(&form, coords, i) { Some(x) => x, None => continue };
                        let (vj, zj) = match value_in_chart(&form, coords, j) { Some(x) => x, None => continue };
                        if vi.is_zero() || vj.is_zero() { continue; }
                        samples += 1;
                        let ratio = vj.div(&vi).unwrap();
                        let z_ratio = zj.div(&zi).unwrap();
                        // leftover after dividing the predicted (z_j/z_i)^(2d-9)
                        let exp = 2 * d as i64 - 9;
                        let pred = if exp >= 0 { z_ratio.pow(exp as u64) } else { z_ratio.inv().unwrap().pow((-exp) as u64) };
                        let leftover = ratio.div(&pred).unwrap();
                        let class = leftover.square_class().unwrap();
                        let neg_class = leftover.neg().square_class().unwrap();
                        let desc = if class == SquareClass::Sign(1) { "+sq" }
                            else if neg_class == SquareClass::Sign(1) { "-sq" }
                            else { "nonsq" };
                        println!("  pair ({},{}): leftover {} [{}]", i, j, leftover, desc);
                        if samples >= 10 { return_or_continue(); }
                    }
                }
            }
        }
    }
}

fn return_or_continue() {}
