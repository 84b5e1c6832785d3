#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exlie/lie.hpp"

namespace exlie {

struct PresentationInput {
    SimpleGraph graph;
    Field field = Field::rationals();
    int degree_cap = 0;             // 0 selects 2n - 1
    bool allow_truncation = false;  // otherwise reaching the cap throws TruncatedAtCap
};

// L(Gamma, 0): the graded quotient of the free Lie algebra on the vertices by
// the non-edge relations and [x_i, [x_i, y]] = 0.
class GradedLieAlgebra : public LieAlgebra {
public:
    GradedLieAlgebra() = default;

    const SimpleGraph& graph() const { return graph_; }
    int generator_count() const { return graph_.n; }
    // Basis element k is the right-nested bracket labels()[k].
    const std::vector<Monomial>& labels() const { return labels_; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<std::size_t>& profile() const { return profile_; }
    bool truncated() const { return truncated_; }

    // The generator x_i (1-based) as a coordinate vector.
    Vector generator(int i) const;
    std::vector<Vector> generators() const;
    std::string profile_text() const;  // "(2,1)"

private:
    friend GradedLieAlgebra build_L0(const PresentationInput& in);
    SimpleGraph graph_;
    std::vector<Monomial> labels_;
    std::vector<int> degrees_;
    std::vector<std::size_t> profile_;
    bool truncated_ = false;
};

GradedLieAlgebra build_L0(const PresentationInput& in);

struct IdentityReport {
    struct Tally {
        std::string name;
        int tried = 0, passed = 0;
    };
    std::vector<Tally> tallies;
    bool ok() const;
};

// Samples Q1, Q2 and Q4 at f = 0 with t drawn from the basis. Throws
// IdentityViolation on the first failure.
IdentityReport check_identities_Q(const GradedLieAlgebra& L, int samples, std::uint64_t seed);

}  // namespace exlie
