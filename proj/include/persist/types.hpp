#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace persist {

using NodeId = int;
using Label = int;
using FactorId = int;

/// Full assignment: one label index per node.
using Labeling = std::vector<Label>;

/// Strictly increasing list of node ids.
using NodeSet = std::vector<NodeId>;

using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Assignment restricted to a sorted node subset; labels[i] belongs to domain[i].
struct PartialLabeling {
  NodeSet domain;
  std::vector<Label> labels;

  std::size_t size() const { return domain.size(); }
  bool empty() const { return domain.empty(); }

  /// Label of `node`, or nullopt when the node lies outside the domain.
  std::optional<Label> find(NodeId node) const;
  Label at(NodeId node) const;

  bool operator==(const PartialLabeling&) const = default;
};

/// Restriction x_{|A} of a full labeling.
PartialLabeling restrict_to(const Labeling& x, const NodeSet& nodes);

/// Default numeric tolerance for equality tests on energies.
inline constexpr double kDefaultTolerance = 1e-9;

/// |a - b| <= tol * (1 + max(|a|, |b|)).
bool nearly_equal(double a, double b, double tol = kDefaultTolerance);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLabelingError : public Error {
 public:
  using Error::Error;
};

class InvalidModelError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedArityError : public Error {
 public:
  using Error::Error;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace persist
