mod common;

use bracketwidth::exactpoly::Polynomial;
use bracketwidth::poisson::{
    dan_vf_bracket, div_dan, div_dan_basis, e_omega_member, hamiltonian_dan, ideal_reduction_torus,
    jac_localized, pb_dan, pb_torus, width1_torus, width2_dan_deg2, DanVectorField,
};
use bracketwidth::rings::{dan_localize, DanElement, DanRing};
use bracketwidth::sample;
use common::{dan_leibniz, rng, torus_leibniz};

const PS: [&str; 3] = ["z^2 - 1", "z^3 - z", "z^4 - 1"];

#[test]
fn torus_bracket_matches_leibniz_oracle_and_axioms() {
    for i in 0..200 {
        let mut r = rng("torus", i);
        let f = sample::torus_element(&mut r, 4, 4);
        let g = sample::torus_element(&mut r, 4, 4);
        let h = sample::torus_element(&mut r, 4, 4);
        let fg = pb_torus(&f, &g).unwrap();
        assert_eq!(fg, torus_leibniz(&f, &g));
        assert!((&fg + &pb_torus(&g, &f).unwrap()).is_zero());
        let leibniz = &pb_torus(&f, &(&g * &h)).unwrap()
            - &(&(&fg * &h) + &(&g * &pb_torus(&f, &h).unwrap()));
        assert!(leibniz.is_zero());
        let jacobi = &(&pb_torus(&f, &pb_torus(&g, &h).unwrap()).unwrap()
            + &pb_torus(&g, &pb_torus(&h, &f).unwrap()).unwrap())
            + &pb_torus(&h, &fg).unwrap();
        assert!(jacobi.is_zero());
    }
}

#[test]
fn dan_bracket_matches_leibniz_oracle() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        for i in 0..100 {
            let mut r = rng(&format!("dan-oracle-{p}"), i);
            let f = sample::dan_element(&mut r, &ring, 4, 4);
            let g = sample::dan_element(&mut r, &ring, 4, 4);
            assert_eq!(
                pb_dan(&f, &g).unwrap(),
                dan_leibniz(&ring, &f, &g),
                "{p} sample {i}"
            );
        }
    }
}

#[test]
fn dan_bracket_axioms() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        for i in 0..60 {
            let mut r = rng(&format!("dan-axioms-{p}"), i);
            let f = sample::dan_element(&mut r, &ring, 3, 3);
            let g = sample::dan_element(&mut r, &ring, 3, 3);
            let h = sample::dan_element(&mut r, &ring, 3, 3);
            let fg = pb_dan(&f, &g).unwrap();
            assert!(fg.add(&pb_dan(&g, &f).unwrap()).is_zero());
            let leib = pb_dan(&f, &g.mul(&h))
                .unwrap()
                .sub(&fg.mul(&h))
                .sub(&g.mul(&pb_dan(&f, &h).unwrap()));
            assert!(leib.is_zero());
            let jac = pb_dan(&f, &pb_dan(&g, &h).unwrap())
                .unwrap()
                .add(&pb_dan(&g, &pb_dan(&h, &f).unwrap()).unwrap())
                .add(&pb_dan(&h, &fg).unwrap());
            assert!(jac.is_zero());
        }
    }
}

#[test]
fn hamiltonian_map_is_a_homomorphism() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        for i in 0..100 {
            let mut r = rng(&format!("hom-{p}"), i);
            let f = sample::dan_element(&mut r, &ring, 3, 3);
            let g = sample::dan_element(&mut r, &ring, 3, 3);
            let lhs = dan_vf_bracket(&hamiltonian_dan(&f), &hamiltonian_dan(&g)).unwrap();
            assert_eq!(lhs, hamiltonian_dan(&pb_dan(&f, &g).unwrap()));
        }
    }
}

#[test]
fn localized_bracket_is_x_times_jacobian() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        let x = Polynomial::var(ring.loc_space(), "x").unwrap();
        for i in 0..100 {
            let mut r = rng(&format!("jac-{p}"), i);
            let f = sample::dan_element(&mut r, &ring, 4, 4);
            let g = sample::dan_element(&mut r, &ring, 4, 4);
            assert_eq!(
                dan_localize(&pb_dan(&f, &g).unwrap()),
                &x * &jac_localized(&f, &g).unwrap()
            );
        }
    }
}

#[test]
fn brackets_are_divergences() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        for i in 0..100 {
            let mut r = rng(&format!("eomega-{p}"), i);
            let f = sample::dan_element(&mut r, &ring, 4, 4);
            let g = sample::dan_element(&mut r, &ring, 4, 4);
            let e = pb_dan(&f, &g).unwrap();
            let m = e_omega_member(&e);
            let w = m.witness().unwrap_or_else(|| panic!("{p} sample {i}: {e}"));
            assert_eq!(div_dan(&w.preimage), e);
        }
        assert!(!e_omega_member(&DanElement::constant(
            &ring,
            bracketwidth::exactpoly::int(1)
        ))
        .is_member());
    }
}

#[test]
fn intrinsic_divergence_matches_basis_formula() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        let pp = DanElement::from_z_poly(&ring, &ring.p_prime()).unwrap();
        let gx = DanElement::generator(&ring, "x").unwrap();
        let gy = DanElement::generator(&ring, "y").unwrap();
        for i in 0..100 {
            let mut r = rng(&format!("divbasis-{p}"), i);
            let f = sample::dan_element(&mut r, &ring, 3, 3);
            let g = sample::dan_element(&mut r, &ring, 3, 3);
            let h = sample::dan_element(&mut r, &ring, 3, 3);
            let s = sample::dan_element(&mut r, &ring, 2, 2);
            let intrinsic = div_dan(&DanVectorField::from_basis(&f, &g, &h).unwrap());
            assert_eq!(intrinsic, div_dan_basis(&f, &g, &h).unwrap());
            // x theta_x + y theta_y = p' theta_z
            let (f2, g2, h2) = (f.add(&s.mul(&gy)), g.add(&s.mul(&gx)), h.sub(&s.mul(&pp)));
            assert_eq!(
                DanVectorField::from_basis(&f2, &g2, &h2).unwrap(),
                DanVectorField::from_basis(&f, &g, &h).unwrap()
            );
            assert_eq!(div_dan_basis(&f2, &g2, &h2).unwrap(), intrinsic);
        }
    }
}

#[test]
fn divergence_identity_for_derivations() {
    for p in PS {
        let ring = DanRing::parse(p).unwrap();
        for i in 0..40 {
            let mut r = rng(&format!("divid-{p}"), i);
            let mk = |r: &mut _| {
                let f = sample::dan_element(r, &ring, 2, 2);
                let g = sample::dan_element(r, &ring, 2, 2);
                let h = sample::dan_element(r, &ring, 2, 2);
                DanVectorField::from_basis(&f, &g, &h).unwrap()
            };
            let mu = mk(&mut r);
            let nu = mk(&mut r);
            let lhs = div_dan(&dan_vf_bracket(&mu, &nu).unwrap());
            let rhs = mu
                .apply(&div_dan(&nu))
                .unwrap()
                .sub(&nu.apply(&div_dan(&mu)).unwrap());
            assert_eq!(lhs, rhs);
            let u = sample::dan_element(&mut r, &ring, 2, 2);
            assert_eq!(
                div_dan(&mu.mul_fn(&u).unwrap()),
                u.mul(&div_dan(&mu)).add(&mu.apply(&u).unwrap())
            );
        }
    }
}

#[test]
fn decompositions_replay() {
    let ring = DanRing::parse("z^2 - 1").unwrap();
    let ring2 = DanRing::parse("3*z^2 + z").unwrap();
    for i in 0..100 {
        let mut r = rng("decomp", i);
        for rg in [&ring, &ring2] {
            let e = sample::e_omega_element(&mut r, rg, 4, 4);
            let out = width2_dan_deg2(&e).unwrap();
            assert_eq!(out.replay().unwrap(), e);
        }
        let f = sample::torus_reducible(&mut r, 4, 5);
        let w = width1_torus(&f).unwrap();
        assert_eq!(w.replay().unwrap(), f);
        let chain = ideal_reduction_torus(&f).unwrap();
        assert!(chain.replay().unwrap());
    }
}
