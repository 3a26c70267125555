// Copyright 2026 The tlg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace tlg::testing {

Vec softmax_ref(const Vec& z) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : z) m = std::max(m, v);
  Vec p(z.size());
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - m);
    s += p[i];
  }
  for (double& v : p) v /= s;
  return p;
}

Vec sparsemax_by_support_enumeration(const Vec& z) {
  const std::size_t n = z.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double sum = 0.0;
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        sum += z[i];
        ++size;
      }
    }
    const double tau = (sum - 1.0) / static_cast<double>(size);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const bool in = mask & (1u << i);
      if (in && !(z[i] > tau)) ok = false;
      if (!in && z[i] > tau) ok = false;
    }
    if (!ok) continue;
    Vec p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) p[i] = z[i] - tau;
    }
    return p;
  }
  return {};
}

namespace {

double tsallis_objective(double p0, double p1, double p2, const Vec& z, double alpha) {
  const double p[3] = {p0, p1, p2};
  double v = 0.0;
  double h = 0.0;
  for (int i = 0; i < 3; ++i) {
    v += p[i] * z[i];
    h += p[i] - std::pow(p[i], alpha);
  }
  return v + h / (alpha * (alpha - 1.0));
}

}  // namespace

Vec entmax3_by_grid_search(const Vec& z, double alpha) {
  double best0 = 1.0 / 3.0;
  double best1 = 1.0 / 3.0;
  double step = 0.01;
  double lo0 = 0.0, hi0 = 1.0, lo1 = 0.0, hi1 = 1.0;
  while (step > 1e-9) {
    double best = -std::numeric_limits<double>::infinity();
    for (double a = lo0; a <= hi0 + 1e-15; a += step) {
      const double p0 = std::clamp(a, 0.0, 1.0);
      auto visit = [&](double p1) {
        if (p1 < 0.0 || p0 + p1 > 1.0) return;
        const double f = tsallis_objective(p0, p1, std::max(0.0, 1.0 - p0 - p1), z, alpha);
        if (f > best) {
          best = f;
          best0 = p0;
          best1 = p1;
        }
      };
      for (double b = lo1; b <= hi1 + 1e-15; b += step) visit(std::clamp(b, 0.0, 1.0));
      // the p2 = 0 edge is rarely on the lattice
      if (1.0 - p0 >= lo1 && 1.0 - p0 <= hi1) visit(1.0 - p0);
    }
    lo0 = std::max(0.0, best0 - 2 * step);
    hi0 = std::min(1.0, best0 + 2 * step);
    lo1 = std::max(0.0, best1 - 2 * step);
    hi1 = std::min(1.0, best1 + 2 * step);
    step /= 10.0;
  }
  return {best0, best1, std::max(0.0, 1.0 - best0 - best1)};
}

Vec jacobi_singular_values(Mat a) {
  // work on columns; transpose so there are at least as many rows as columns
  std::size_t m = a.size();
  std::size_t n = a.empty() ? 0 : a[0].size();
  if (n > m) {
    Mat t(n, Vec(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
    }
    a = std::move(t);
    std::swap(m, n);
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a[i][p] * a[i][p];
          beta += a[i][q] * a[i][q];
          gamma += a[i][p] * a[i][q];
        }
        if (std::abs(gamma) < 1e-300) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a[i][p];
          const double aq = a[i][q];
          a[i][p] = c * ap - s * aq;
          a[i][q] = s * ap + c * aq;
        }
      }
    }
    if (off < 1e-15) break;
  }
  Vec sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a[i][j] * a[i][j];
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

namespace {

Mat to_mat(const Eigen::MatrixXd& m) {
  Mat out(static_cast<std::size_t>(m.rows()), Vec(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

Vec to_vec(const Eigen::VectorXd& v) { return Vec(v.data(), v.data() + v.size()); }

Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.size(), Vec(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Mat norm_rows(const Mat& x, const Vec& g, const Vec& b, double eps) {
  Mat out = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double mean = 0.0;
    for (double v : x[i]) mean += v;
    mean /= static_cast<double>(x[i].size());
    double var = 0.0;
    for (double v : x[i]) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x[i].size());
    for (std::size_t j = 0; j < x[i].size(); ++j) {
      out[i][j] = (x[i][j] - mean) / std::sqrt(var + eps) * g[j] + b[j];
    }
  }
  return out;
}

double gelu(double x) {
  const double pi = 3.14159265358979323846;
  return 0.5 * x * (1.0 + std::tanh(std::sqrt(2.0 / pi) * (x + 0.044715 * x * x * x)));
}

}  // namespace

Mat reference_transformer(const TransformerWeights& w, const std::vector<std::int32_t>& tokens) {
  const auto& cfg = w.config;
  const std::size_t L = tokens.size();
  const std::size_t d = cfg.d_model;
  const Mat we = to_mat(w.token_embedding);
  const Mat wp = to_mat(w.position_embedding);
  Mat h(L, Vec(d));
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < d; ++j) h[i][j] = we[tokens[i]][j] + wp[i][j];
  }
  for (const auto& layer : w.layers) {
    const Mat x = norm_rows(h, to_vec(layer.ln1_gain), to_vec(layer.ln1_bias), cfg.layer_norm_eps);
    Mat concat(L, Vec());
    for (std::size_t head = 0; head < cfg.n_heads; ++head) {
      const Mat q = matmul(x, to_mat(layer.wq[head]));
      const Mat k = matmul(x, to_mat(layer.wk[head]));
      const Mat v = matmul(x, to_mat(layer.wv[head]));
      const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.head_dim()));
      for (std::size_t i = 0; i < L; ++i) {
        Vec score;
        for (std::size_t j = 0; j <= i; ++j) {
          double s = 0.0;
          for (std::size_t c = 0; c < q[i].size(); ++c) s += q[i][c] * k[j][c];
          score.push_back(s * scale);
        }
        const Vec a = softmax_ref(score);
        Vec out(v[0].size(), 0.0);
        for (std::size_t j = 0; j <= i; ++j) {
          for (std::size_t c = 0; c < out.size(); ++c) out[c] += a[j] * v[j][c];
        }
        concat[i].insert(concat[i].end(), out.begin(), out.end());
      }
    }
    const Mat attn = matmul(concat, to_mat(layer.wo));
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = 0; j < d; ++j) h[i][j] += attn[i][j];
    }
    const Mat y = norm_rows(h, to_vec(layer.ln2_gain), to_vec(layer.ln2_bias), cfg.layer_norm_eps);
    Mat f = matmul(y, to_mat(layer.w1));
    for (auto& row : f) {
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = gelu(row[j] + layer.b1(static_cast<Eigen::Index>(j)));
    }
    const Mat g = matmul(f, to_mat(layer.w2));
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = 0; j < d; ++j) h[i][j] += g[i][j] + layer.b2(static_cast<Eigen::Index>(j));
    }
  }
  Mat logits(L, Vec(cfg.vocab_size, 0.0));
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t t = 0; t < cfg.vocab_size; ++t) {
      for (std::size_t j = 0; j < d; ++j) logits[i][t] += h[i][j] * we[t][j];
    }
  }
  return logits;
}

ReferenceKneserNey::ReferenceKneserNey(const std::vector<std::vector<std::int32_t>>& docs,
                                       std::size_t vocab, std::size_t order, std::int32_t bos,
                                       std::int32_t eos, Vec discounts)
    : vocab_(vocab), order_(order), bos_(bos), discounts_(std::move(discounts)), counts_(order) {
  std::vector<std::vector<std::int32_t>> padded;
  for (const auto& d : docs) {
    std::vector<std::int32_t> s(order - 1, bos);
    s.insert(s.end(), d.begin(), d.end());
    s.push_back(eos);
    padded.push_back(std::move(s));
  }
  for (const auto& s : padded) {
    for (std::size_t i = order - 1; i < s.size(); ++i) {
      counts_[order - 1][std::vector<std::int32_t>(s.begin() + (i + 1 - order), s.begin() + i + 1)] += 1.0;
    }
  }
  // continuation count of a k-gram: distinct single-token left extensions
  // among observed (k+1)-grams ending at an n-gram position
  for (std::size_t k = 1; k < order; ++k) {
    std::set<std::vector<std::int32_t>> extended;
    for (const auto& s : padded) {
      for (std::size_t i = order - 1; i < s.size(); ++i) {
        extended.emplace(s.begin() + (i - k), s.begin() + i + 1);
      }
    }
    for (const auto& g : extended) counts_[k - 1][std::vector<std::int32_t>(g.begin() + 1, g.end())] += 1.0;
  }
}

double ReferenceKneserNey::prob_k(std::size_t k, const std::vector<std::int32_t>& ctx,
                                  std::int32_t w) const {
  const double lower =
      k == 1 ? 1.0 / static_cast<double>(vocab_)
             : prob_k(k - 1, std::vector<std::int32_t>(ctx.begin() + 1, ctx.end()), w);
  double total = 0.0;
  double types = 0.0;
  double c = 0.0;
  for (const auto& [g, n] : counts_[k - 1]) {
    if (!std::equal(ctx.begin(), ctx.end(), g.begin())) continue;
    total += n;
    types += 1.0;
    if (g.back() == w) c = n;
  }
  if (total == 0.0) return lower;
  const double d = discounts_[k - 1];
  return std::max(c - d, 0.0) / total + d * types / total * lower;
}

double ReferenceKneserNey::prob(const std::vector<std::int32_t>& context, std::int32_t w) const {
  std::vector<std::int32_t> eff(order_ - 1, bos_);
  eff.insert(eff.end(), context.begin(), context.end());
  const std::vector<std::int32_t> ctx(eff.end() - (order_ - 1), eff.end());
  return prob_k(order_, ctx, w);
}

}  // namespace tlg::testing
