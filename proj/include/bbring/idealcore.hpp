#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbring/abelian.hpp"

namespace bbring::idealcore {

using abelian::InvariantFactorBasis;
using abelian::Workspace;
using blackbox::ElementCode;
using intlinalg::IntVector;

enum class Side { left, right, two_sided };

const char* to_string(Side s);
std::optional<Side> parse_side(std::string_view text);

struct IdealSpec {
    Side side = Side::two_sided;
    std::vector<ElementCode> generators;
};

/// Expression over the ideal generators i_1..i_m: integer combinations and
/// multiplication by multipliers r_1..r_n (the ring generators unless a caller
/// supplies its own list).
class Provenance {
public:
    static Provenance generator(std::size_t index);
    static Provenance left_multiple(std::size_t multiplier, Provenance operand);
    static Provenance right_multiple(std::size_t multiplier, Provenance operand);
    static Provenance combination(IntVector coeffs, std::vector<Provenance> terms);

    ElementCode evaluate(Workspace& ws, const std::vector<ElementCode>& generators,
                         const std::vector<ElementCode>& multipliers) const;
    std::string to_string() const;
    /// Node count of the (shared) tree.
    std::size_t size() const;

    /// Index of the generator when the expression is a bare generator.
    std::optional<std::size_t> as_generator() const;

    struct Node;

private:
    explicit Provenance(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct AccumulationTrace {
    std::size_t initial = 0;        // elements of B_1 (the ideal generators)
    std::size_t augmentations = 0;  // each appends one element
    std::size_t rescans = 0;
    std::size_t subset_tests = 0;
    std::size_t samples = 0;
    bool low_confidence = false;
};

struct Accumulation {
    std::vector<ElementCode> elements;
    std::vector<Provenance> provenance;
    AccumulationTrace trace;
};

/// Additive generators of the ideal (or, with multipliers = generators and
/// side two_sided, of the subring generated by them).
Accumulation accumulate_additive_generators(Workspace& ws, const IdealSpec& ideal,
                                            const std::vector<ElementCode>& multipliers = {});

/// M[i][j][k] with h_i h_j = sum_k M[i][j][k] h_k.
using Tensor = std::vector<std::vector<std::vector<std::uint64_t>>>;

struct BasisRepresentation {
    IdealSpec spec;
    std::vector<ElementCode> multipliers;
    InvariantFactorBasis basis;
    Tensor tensor;
    std::vector<Provenance> provenance;  // one per h_i
    Accumulation accumulation;

    std::uint64_t order() const { return basis.order(); }
};

BasisRepresentation find_basis_representation(Workspace& ws, const IdealSpec& ideal,
                                              const std::vector<ElementCode>& multipliers = {});

/// Throws ClosureError when some product h_i h_j leaves the span.
Tensor multiplication_tensor(Workspace& ws, const InvariantFactorBasis& basis);

/// Throws MembershipError when r is not in the ideal.
Provenance membership_witness(Workspace& ws, ElementCode r, const BasisRepresentation& rep);

/// The whole ring as an ideal of itself.
IdealSpec whole_ring(const blackbox::RingOracle& ring);

}  // namespace bbring::idealcore
