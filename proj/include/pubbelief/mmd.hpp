// Copyright 2026 The pubbelief Authors
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

#ifndef PUBBELIEF_MMD_HPP_
#define PUBBELIEF_MMD_HPP_

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pubbelief {

namespace detail {

// Normalized exp of log-weights, shifted for stability.
inline std::vector<double> softmax_of_logs(std::vector<double> logw) {
  double m = logw.front();
  for (double v : logw) m = std::max(m, v);
  double z = 0.0;
  for (double& v : logw) {
    v = std::exp(v - m);
    z += v;
  }
  for (double& v : logw) v /= z;
  return logw;
}

}  // namespace detail

// One magnetic mirror descent step: the maximizer of
//   <pi, q> - alpha*KL(pi, rho) - (1/eta)*KL(pi, pi_t),
// in closed form pi ~ [pi_t * e^{eta q} * rho^{alpha eta}]^{1/(1+alpha eta)}.
// A uniform magnet reduces to pi ~ [pi_t e^{eta q}]^{1/(1+alpha eta)}.
inline std::vector<double> mmd_step(const std::vector<double>& pi_t,
                                    const std::vector<double>& q, double eta,
                                    double alpha,
                                    const std::vector<double>& magnet) {
  size_t n = pi_t.size();
  if (q.size() != n || magnet.size() != n) {
    throw std::invalid_argument("mmd_step: dimension mismatch");
  }
  if (eta <= 0.0) throw std::domain_error("mmd_step: eta must be positive");
  if (alpha < 0.0) throw std::domain_error("mmd_step: alpha must be nonnegative");
  std::vector<double> logw(n);
  for (size_t i = 0; i < n; ++i) {
    if (pi_t[i] <= 0.0) {
      throw std::domain_error("mmd_step: pi_t must be strictly positive");
    }
    if (magnet[i] <= 0.0) {
      throw std::domain_error("mmd_step: magnet must be strictly positive");
    }
    logw[i] = (std::log(pi_t[i]) + eta * q[i] + alpha * eta * std::log(magnet[i])) /
              (1.0 + alpha * eta);
  }
  return detail::softmax_of_logs(std::move(logw));
}

inline std::vector<double> mmd_step_uniform_magnet(
    const std::vector<double>& pi_t, const std::vector<double>& q, double eta,
    double alpha) {
  return mmd_step(pi_t, q, eta, alpha,
                  std::vector<double>(pi_t.size(), 1.0 / pi_t.size()));
}

// The fixed point of the MMD update: delta ~ rho * e^{q/alpha} for
// alpha > 0, and the uniform distribution over argmax(q) at alpha = 0.
inline std::vector<double> greedy_policy(const std::vector<double>& q,
                                         double alpha,
                                         const std::vector<double>& magnet) {
  size_t n = q.size();
  if (magnet.size() != n) {
    throw std::invalid_argument("greedy_policy: dimension mismatch");
  }
  if (alpha < 0.0) throw std::domain_error("greedy_policy: alpha must be nonnegative");
  if (alpha == 0.0) {
    double m = q.front();
    for (double v : q) m = std::max(m, v);
    std::vector<double> pi(n, 0.0);
    int ties = 0;
    for (size_t i = 0; i < n; ++i) {
      if (q[i] >= m - 1e-12) {
        pi[i] = 1.0;
        ++ties;
      }
    }
    for (double& v : pi) v /= ties;
    return pi;
  }
  std::vector<double> logw(n);
  for (size_t i = 0; i < n; ++i) {
    if (magnet[i] <= 0.0) {
      throw std::domain_error("greedy_policy: magnet must be strictly positive");
    }
    logw[i] = q[i] / alpha + std::log(magnet[i]);
  }
  return detail::softmax_of_logs(std::move(logw));
}

inline std::vector<double> greedy_policy_uniform_magnet(
    const std::vector<double>& q, double alpha) {
  return greedy_policy(q, alpha, std::vector<double>(q.size(), 1.0 / q.size()));
}

}  // namespace pubbelief

#endif  // PUBBELIEF_MMD_HPP_
