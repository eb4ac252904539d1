#pragma once

#include <span>
#include <vector>

#include "curvemg/denoise.hpp"
#include "curvemg/grid.hpp"
#include "curvemg/operators.hpp"

namespace curvemg {

/// Right-hand side r_i = <b - A u, A phi_i> + 2 alpha d_i for the listed
/// patches, where phi_i is the indicator of the in-image part of patch i.
std::vector<double> assemble_color_rhs(const Image& u, std::span<const double> b, const LinearOperator& op,
                                       const Partition& partition, std::span<const int> patches, double alpha,
                                       std::span<const double> d, Execution exec = Execution::parallel);

/// (G + 2 alpha I) c = r with G_ik = <A phi_i, A phi_k>, applied matrix-free.
class ColorSystem {
 public:
  ColorSystem(const LinearOperator& op, const Partition& partition, std::span<const int> patches, double alpha,
              std::vector<double> rhs, Execution exec = Execution::parallel);

  std::size_t size() const { return rhs_.size(); }
  std::span<const double> rhs() const { return rhs_; }
  double alpha() const { return alpha_; }
  void apply(std::span<const double> c, std::span<double> out) const;

  /// sum_i c_i phi_i as an image.
  Image expand(std::span<const double> c) const;
  /// <img, phi_i> for every listed patch.
  std::vector<double> patch_sums(const Image& img) const;

 private:
  const LinearOperator& op_;
  const Partition& partition_;
  std::span<const int> patches_;
  double alpha_;
  std::vector<double> rhs_;
  Execution exec_;
};

struct CgResult {
  std::vector<double> solution;
  int iterations = 0;
  std::vector<double> residual_norms;  // ||r_k||, starting with ||rhs||
};

/// Conjugate gradients from zero. Stops after max_iter steps or when
/// ||r_k|| <= tol ||rhs||. Throws std::runtime_error on a non-finite residual.
CgResult cg_solve(const ColorSystem& system, int max_iter = 10, double tol = 1e-8);

enum class InitRule { normalized_adjoint, adjoint };

struct ReconstructionOptions {
  SolverConfig solver{.alpha = 5e-3, .epsilon = 1e-4, .max_outer = 100};
  int cg_max_iter = 10;
  double cg_tol = 1e-8;
  InitRule init = InitRule::normalized_adjoint;
  int norm_iterations = 20;
  double peak = 1.0;
};

/// 1/2 ||A u - b||^2 + alpha sum |H(u)|.
double reconstruction_objective(const Image& u, std::span<const double> b, const LinearOperator& op, double alpha,
                                Boundary boundary = Boundary::antisymmetric);

Image initial_guess(std::span<const double> b, const LinearOperator& op, const ReconstructionOptions& options);

struct ReconstructionResult {
  Image u;
  Image u0;
  ConvergenceTrace trace;
};

/// Multi-grid mean-curvature reconstruction from b = A u + noise. Each
/// (layer, colour) step solves the coupled colour system by CG and adds the
/// prolongated corrections.
ReconstructionResult reconstruct(std::span<const double> b, const LinearOperator& op,
                                 const ReconstructionOptions& options, const Image* reference = nullptr);

}  // namespace curvemg
