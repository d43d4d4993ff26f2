#include "sgm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

std::uint64_t mix_seed(std::uint64_t master, int rep) {
    std::uint64_t x = master + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(rep + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_file(std::ofstream& out, const std::string& path) {
    if (!out) throw Error("cannot open " + path + " for writing");
}

} // namespace

RocCurve roc(const EdgeScoreMatrix& scores, const GroundTruth& truth) {
    scores.validate();
    std::vector<double> pos, neg;
    for (int i = 1; i < scores.p; ++i) {
        for (int j = 0; j < i; ++j) {
            (truth.has_edge(i, j) ? pos : neg).push_back(scores.scores(i, j));
        }
    }
    if (pos.empty() || neg.empty()) {
        throw InvalidTruth("ROC requires both edge classes to be present");
    }

    // Sweep thresholds downward through the distinct score values.
    std::vector<double> all = pos;
    all.insert(all.end(), neg.begin(), neg.end());
    std::sort(all.begin(), all.end(), std::greater<double>());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    RocCurve out;
    out.points.emplace_back(0.0, 0.0);
    const double np = static_cast<double>(pos.size());
    const double nn = static_cast<double>(neg.size());
    for (double t : all) {
        const auto tp = std::count_if(pos.begin(), pos.end(), [&](double s) { return s >= t; });
        const auto fp = std::count_if(neg.begin(), neg.end(), [&](double s) { return s >= t; });
        out.points.emplace_back(static_cast<double>(fp) / nn, static_cast<double>(tp) / np);
    }
    if (out.points.back() != std::make_pair(1.0, 1.0)) {
        out.points.emplace_back(1.0, 1.0);
    }

    double wins = 0.0;
    for (double s : pos) {
        for (double t : neg) {
            if (s > t) {
                wins += 1.0;
            } else if (s == t) {
                wins += 0.5;
            }
        }
    }
    out.auc = wins / (np * nn);
    return out;
}

double roc_interpolate(const RocCurve& curve, double fpr) {
    const auto& pts = curve.points;
    if (pts.empty()) throw InvalidInput("empty ROC curve");
    if (fpr < pts.front().first) return pts.front().second;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (fpr <= pts[k].first) {
            const auto [x0, y0] = pts[k - 1];
            const auto [x1, y1] = pts[k];
            if (x1 == x0) return std::max(y0, y1);
            return y0 + (y1 - y0) * (fpr - x0) / (x1 - x0);
        }
    }
    return pts.back().second;
}

Dataset generate(const SimSpec& spec, std::uint64_t seed) {
    switch (spec.tag) {
        case 1: return gen_model_1(spec.n, seed);
        case 2: return gen_model_2(spec.n, seed);
        case 3:
        case 4: return gen_hub_model(spec.n, spec.p, spec.n_hubs, spec.tag, seed);
        case 5: return gen_model_5(spec.n, seed);
        default: throw InvalidConfig("model tag must be 1..5");
    }
}

ReplicateSummary replicate(const SimSpec& spec, int reps, const PipelineConfig& cfg,
                           std::uint64_t master_seed) {
    if (reps < 1) throw InvalidConfig("reps must be >= 1");
    cfg.validate();

    ReplicateSummary out;
    const int tuning_reps = std::min(5, reps);
    const bool any_auto = cfg.eps_pair == PipelineConfig::kAuto ||
                          cfg.eps_minus == PipelineConfig::kAuto ||
                          cfg.eps_u == PipelineConfig::kAuto;

    std::vector<RocCurve> curves;
    double sum_pair = 0.0, sum_minus = 0.0, sum_u = 0.0;
    PipelineConfig rest_cfg = cfg;

    for (int r = 0; r < reps; ++r) {
        const std::uint64_t seed = mix_seed(master_seed, r);
        const Dataset ds = generate(spec, seed);
        const PipelineConfig& use = (any_auto && r >= tuning_reps) ? rest_cfg : cfg;
        RunInfo info;
        const EdgeScoreMatrix scores = score_all_pairs(ds.data, use, &info);
        if (r < tuning_reps) {
            sum_pair += info.eps_pair;
            sum_minus += info.eps_minus;
            sum_u += info.eps_u;
            if (any_auto && r == tuning_reps - 1) {
                rest_cfg.eps_pair = sum_pair / tuning_reps;
                rest_cfg.eps_minus = sum_minus / tuning_reps;
                rest_cfg.eps_u = sum_u / tuning_reps;
            }
        }
        const RocCurve curve = roc(scores, ds.truth);
        curves.push_back(curve);
        out.aucs.push_back(curve.auc);
        out.seeds.push_back(seed);
    }
    out.tuned_eps_pair = sum_pair / tuning_reps;
    out.tuned_eps_minus = sum_minus / tuning_reps;
    out.tuned_eps_u = sum_u / tuning_reps;

    out.mean_auc = std::accumulate(out.aucs.begin(), out.aucs.end(), 0.0) / reps;
    double ss = 0.0;
    for (double a : out.aucs) ss += (a - out.mean_auc) * (a - out.mean_auc);
    out.sd_auc = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;

    for (int k = 0; k <= 100; ++k) {
        const double f = k / 100.0;
        double tpr = 0.0;
        for (const auto& c : curves) tpr += roc_interpolate(c, f);
        out.fpr_grid.push_back(f);
        out.mean_tpr.push_back(tpr / reps);
    }
    return out;
}

void write_auc_csv(const std::string& path, const std::vector<ReplicateSummary>& summaries,
                   const std::vector<std::string>& method_names) {
    std::ofstream out(path);
    require_file(out, path);
    out << "seed,method,auc\n";
    for (std::size_t m = 0; m < summaries.size(); ++m) {
        for (std::size_t r = 0; r < summaries[m].aucs.size(); ++r) {
            out << summaries[m].seeds[r] << ',' << method_names[m] << ','
                << summaries[m].aucs[r] << '\n';
        }
    }
}

void write_roc_csv(const std::string& path, const std::vector<ReplicateSummary>& summaries,
                   const std::vector<std::string>& method_names) {
    std::ofstream out(path);
    require_file(out, path);
    out << "fpr";
    for (const auto& name : method_names) out << ",mean_tpr_" << name;
    out << '\n';
    if (summaries.empty()) return;
    for (std::size_t k = 0; k < summaries[0].fpr_grid.size(); ++k) {
        out << summaries[0].fpr_grid[k];
        for (const auto& s : summaries) out << ',' << s.mean_tpr[k];
        out << '\n';
    }
}

void write_roc_svg(const std::string& path, const std::vector<ReplicateSummary>& summaries,
                   const std::vector<std::string>& method_names) {
    std::ofstream out(path);
    require_file(out, path);
    const int w = 480, h = 480, pad = 40;
    const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad"};
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    out << "<rect width='" << w << "' height='" << h << "' fill='white'/>\n";
    auto px = [&](double f) { return pad + f * (w - 2 * pad); };
    auto py = [&](double t) { return h - pad - t * (h - 2 * pad); };
    out << "<line x1='" << px(0) << "' y1='" << py(0) << "' x2='" << px(1) << "' y2='" << py(1)
        << "' stroke='#bbb' stroke-dasharray='4'/>\n";
    out << "<rect x='" << pad << "' y='" << pad << "' width='" << w - 2 * pad << "' height='"
        << h - 2 * pad << "' fill='none' stroke='black'/>\n";
    for (std::size_t m = 0; m < summaries.size(); ++m) {
        out << "<polyline fill='none' stroke='" << colors[m % 4] << "' stroke-width='2' points='";
        for (std::size_t k = 0; k < summaries[m].fpr_grid.size(); ++k) {
            out << px(summaries[m].fpr_grid[k]) << ',' << py(summaries[m].mean_tpr[k]) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << pad + 8 << "' y='" << pad + 16 + 16 * static_cast<int>(m)
            << "' fill='" << colors[m % 4] << "' font-size='12'>" << method_names[m]
            << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace sgm
