// Copyright 2026 The spinq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinq/entangle.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace spinq;
using spinq::testing::random_alphas;
using spinq::testing::random_direction;
using spinq::testing::random_state;
using spinq::testing::shared_rng;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex k0{0.0, 0.0};
const Complex k1{1.0, 0.0};

}  // namespace

TEST(MakeTwoSpin, normalizes_and_rejects_zero) {
    const auto s = make_two_spin({Complex{2.0, 0.0}, k0, k0, k0});
    EXPECT_EQ(s.amps()[0], k1);
    EXPECT_THROW(make_two_spin({k0, k0, k0, k0}), ValidationError);
}

TEST(MakeTwoSpin, worked_examples) {
    // alpha_i = 0 except alpha_2: |+e_a>|-e_b>.
    const auto e_a = Direction::from_angles(0.7, 1.0);
    const auto e_b = Direction::from_angles(2.0, 3.0);
    const auto s = make_two_spin({k0, k1, k0, k0}, e_a, e_b);
    const auto product = tensor_product(basis_pair(e_a).first, basis_pair(e_b).second);
    EXPECT_TRUE(same_ray(s.computational(), product, kExactTol));

    const auto sym = make_two_spin({0.5, 0.5, 0.5, 0.5});
    EXPECT_TRUE(factorize(sym).factorizable);

    const auto sing = make_two_spin({k0, Complex{kInvSqrt2}, Complex{-kInvSqrt2}, k0});
    EXPECT_TRUE(same_ray(sing.amps(), singlet().amps(), kExactTol));
}

TEST(Singlet, structure) {
    const auto s = singlet();
    EXPECT_EQ(s.alpha(Sign::Plus, Sign::Plus), k0);
    EXPECT_EQ(s.alpha(Sign::Minus, Sign::Minus), k0);
    EXPECT_NEAR(s.amps().norm_squared(), 1.0, kExactTol);
}

TEST(Singlet, parallel_amplitude_vanishes_in_every_basis) {
    // Brute-force basis change: project onto |+e>|+e> for sampled e.
    auto &rng = shared_rng();
    for (int k = 0; k < 20; ++k) {
        const auto e = random_direction(rng);
        EXPECT_LE(std::abs(joint_amplitude(singlet(), Sign::Plus, e, Sign::Plus, e)), kExactTol);
        EXPECT_LE(std::abs(joint_amplitude(singlet(), Sign::Minus, e, Sign::Minus, e)), kExactTol);
    }
}

TEST(Factorize, worked_examples) {
    const auto r1 = factorize(make_two_spin({k0, k1, k0, k0}));
    ASSERT_TRUE(r1.factorizable);
    EXPECT_TRUE(same_ray(*r1.factor_a, PureState::basis(2, 0)));
    EXPECT_TRUE(same_ray(*r1.factor_b, PureState::basis(2, 1)));
    EXPECT_EQ(r1.defect, 0.0);

    const auto r2 = factorize(make_two_spin({0.5, 0.5, 0.5, 0.5}));
    ASSERT_TRUE(r2.factorizable);
    const auto plus = PureState::from_amplitudes({kInvSqrt2, kInvSqrt2});
    EXPECT_TRUE(same_ray(*r2.factor_a, plus));
    EXPECT_TRUE(same_ray(*r2.factor_b, plus));

    const auto r3 = factorize(singlet());
    EXPECT_FALSE(r3.factorizable);
    EXPECT_FALSE(r3.factor_a.has_value());
    // det [[0, 1/sqrt2], [-1/sqrt2, 0]] = 1/2.
    EXPECT_NEAR(r3.defect, 0.5, kExactTol);
}

TEST(Factorize, tensor_round_trip_property) {
    auto &rng = shared_rng();
    for (int k = 0; k < 1000; ++k) {
        const auto a = random_state(2, rng);
        const auto b = random_state(2, rng);
        const auto ab = tensor_product(a, b);
        const TwoSpinState s(ab, Direction::plus_z(), Direction::plus_z());
        const auto r = factorize(s);
        ASSERT_TRUE(r.factorizable) << "defect " << r.defect;
        EXPECT_TRUE(same_ray(*r.factor_a, a, 1e-9));
        EXPECT_TRUE(same_ray(*r.factor_b, b, 1e-9));
        EXPECT_TRUE(same_ray(tensor_product(*r.factor_a, *r.factor_b), ab, 1e-9));
    }
}

TEST(Factorize, defect_bounds_property) {
    auto &rng = shared_rng();
    for (int k = 0; k < 2000; ++k) {
        const auto s = make_two_spin(random_alphas(rng));
        const auto r = factorize(s);
        EXPECT_GE(r.defect, 0.0);
        EXPECT_LE(r.defect, 0.5 + kExactTol);
    }
}

TEST(EntanglementScore, examples) {
    auto &rng = shared_rng();
    for (int k = 0; k < 100; ++k) {
        const TwoSpinState s(tensor_product(random_state(2, rng), random_state(2, rng)),
                             Direction::plus_z(), Direction::plus_z());
        EXPECT_LE(entanglement_score(s), kExactTol);
    }
    EXPECT_NEAR(entanglement_score(singlet()), 1.0, kExactTol);
    // 2 sqrt(0.9 * 0.1) = 0.6.
    const auto s = make_two_spin({Complex{std::sqrt(0.9)}, k0, k0, Complex{std::sqrt(0.1)}});
    EXPECT_NEAR(entanglement_score(s), 0.6, kExactTol);
}

TEST(EntanglementScore, bounded_property) {
    auto &rng = shared_rng();
    for (int k = 0; k < 10000; ++k) {
        const double score = entanglement_score(make_two_spin(random_alphas(rng)));
        EXPECT_GE(score, 0.0);
        EXPECT_LE(score, 1.0 + kExactTol);
    }
}

TEST(EntanglementScore, invariant_under_choice_of_reference_directions) {
    auto &rng = shared_rng();
    for (int k = 0; k < 200; ++k) {
        const auto alphas = random_alphas(rng);
        const auto s = make_two_spin(alphas, random_direction(rng), random_direction(rng));
        const TwoSpinState z(s.computational(), Direction::plus_z(), Direction::plus_z());
        EXPECT_NEAR(entanglement_score(s), entanglement_score(z), 1e-12);
    }
}

TEST(SingletJointProb, examples) {
    const auto e = Direction::from_angles(1.0, 2.0);
    EXPECT_NEAR(singlet_joint_prob(Sign::Plus, e, Sign::Plus, e), 0.0, kExactTol);
    for (const auto &[sa, sb] : kSignPairs) {
        EXPECT_NEAR(singlet_joint_prob(sa, Direction::plus_x(), sb, Direction::plus_z()), 0.25,
                    kExactTol);
    }
    EXPECT_NEAR(singlet_joint_prob(Sign::Plus, e, Sign::Plus, -e), 0.5, kExactTol);
}

TEST(SingletJointProb, completeness_and_anticorrelation_property) {
    auto &rng = shared_rng();
    for (int k = 0; k < 1000; ++k) {
        const auto a = random_direction(rng);
        const auto b = random_direction(rng);
        double total = 0.0;
        for (const auto &[sa, sb] : kSignPairs) {
            const double p = singlet_joint_prob(sa, a, sb, b);
            EXPECT_GE(p, -kExactTol);
            EXPECT_LE(p, 0.5 + kExactTol);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, kExactTol);
    }
    for (int k = 0; k < 100; ++k) {
        const auto e = random_direction(rng);
        EXPECT_NEAR(singlet_joint_prob(Sign::Plus, e, Sign::Plus, e), 0.0, kExactTol);
    }
}

TEST(JointProbGeneral, examples) {
    const TwoSpinState up_up(PureState::basis(4, 0), Direction::plus_z(), Direction::plus_z());
    const auto z = Direction::plus_z();
    EXPECT_NEAR(joint_prob_general(up_up, Sign::Plus, z, Sign::Plus, z), 1.0, kExactTol);
    const auto x = Direction::plus_x();
    EXPECT_NEAR(joint_prob_general(singlet(), Sign::Plus, x, Sign::Plus, x), 0.0, kExactTol);
}

TEST(JointProbGeneral, agrees_with_singlet_closed_form_property) {
    auto &rng = shared_rng();
    for (int k = 0; k < 1000; ++k) {
        const auto a = random_direction(rng);
        const auto b = random_direction(rng);
        for (const auto &[sa, sb] : kSignPairs) {
            EXPECT_NEAR(joint_prob_general(singlet(), sa, a, sb, b), singlet_joint_prob(sa, a, sb, b),
                        kExactTol);
        }
    }
}

TEST(JointProbGeneral, four_outcomes_sum_to_one_property) {
    auto &rng = shared_rng();
    for (int k = 0; k < 1000; ++k) {
        const auto s = make_two_spin(random_alphas(rng), random_direction(rng), random_direction(rng));
        const auto table = joint_table(s, random_direction(rng), random_direction(rng));
        EXPECT_NEAR(table[0] + table[1] + table[2] + table[3], 1.0, kExactTol);
    }
}

TEST(JointProbGeneral, reference_directions_are_respected) {
    // The singlet is rotation invariant: expressing it relative to any pair
    // of equal reference directions gives the same physical state.
    auto &rng = shared_rng();
    for (int k = 0; k < 50; ++k) {
        const auto e = random_direction(rng);
        const auto s = make_two_spin({k0, Complex{kInvSqrt2}, Complex{-kInvSqrt2}, k0}, e, e);
        EXPECT_TRUE(same_ray(s.computational(), singlet().computational(), 1e-12));
    }
}
