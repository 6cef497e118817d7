#include "relkit/errors.hpp"
#include "relkit/json_io.hpp"
#include "relkit/transforms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

namespace {

using namespace relkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;         // usage, I/O, malformed input
constexpr int kExitVerdict = 2;       // mathematical verdict mismatch
constexpr int kExitIndeterminate = 3; // numerical indeterminacy

std::vector<Complex> sorted_grid(std::vector<Complex> grid) {
    std::sort(grid.begin(), grid.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return grid;
}

std::vector<Complex> load_grid(const std::string& spec) {
    if (spec.empty() || spec == "default") return default_lambda_grid();
    return sorted_grid(grid_from_json(load_json_file(spec)));
}

void emit(const json& j, const std::string& out_path, const std::string& csv) {
    if (out_path.empty()) {
        std::cout << (csv.empty() ? j.dump(2) : csv) << "\n";
        return;
    }
    if (csv.empty()) {
        save_json_file(out_path, j);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open \"" + out_path + "\"");
        out << csv;
    }
}

std::string verdict_csv(const FamilyVerdict& v) {
    std::string csv = "check,value\n";
    auto flag = [&](const char* name, bool val) {
        csv += std::string(name) + "," + (val ? "1" : "0") + "\n";
    };
    flag("nevanlinna", v.nevanlinna);
    flag("stieltjes", v.stieltjes);
    flag("inverse_stieltjes", v.inverse_stieltjes);
    flag("rs_class", v.rs_class);
    flag("inner", v.inner);
    flag("holomorphy_heuristic", v.holomorphy_heuristic);
    for (const auto& [key, val] : v.residuals)
        csv += key + "," + std::to_string(val) + "\n";
    return csv;
}

std::string verification_csv(const VerificationReport& rep) {
    std::string csv = "lambda_re,lambda_im,residual,pass\n";
    for (const auto& row : rep.rows)
        csv += std::to_string(row.lambda.real()) + "," +
               std::to_string(row.lambda.imag()) + "," +
               std::to_string(row.residual) + "," + (row.pass ? "1" : "0") + "\n";
    return csv;
}

std::string model_csv(const std::vector<ModelCheckRow>& rows) {
    std::string csv =
        "lambda_re,lambda_im,quadrature_re,quadrature_im,closed_re,closed_im,abs_err\n";
    for (const auto& row : rows)
        csv += std::to_string(row.lambda.real()) + "," +
               std::to_string(row.lambda.imag()) + "," +
               std::to_string(row.quadrature.real()) + "," +
               std::to_string(row.quadrature.imag()) + "," +
               std::to_string(row.closed_form.real()) + "," +
               std::to_string(row.closed_form.imag()) + "," +
               std::to_string(row.abs_err) + "\n";
    return csv;
}

int run_classify(const std::string& family_path, const std::string& grid_spec,
                 const std::string& expect, const std::string& out_path,
                 const std::string& format) {
    const OperatorFamily fam = family_from_json(load_json_file(family_path));
    const FamilyVerdict verdict = classify_family(fam, load_grid(grid_spec));
    emit(verdict_to_json(verdict), out_path,
         format == "csv" ? verdict_csv(verdict) : "");
    if (expect.empty()) return kExitOk;
    bool matched = false;
    if (expect == "nevanlinna") matched = verdict.nevanlinna;
    else if (expect == "stieltjes") matched = verdict.stieltjes;
    else if (expect == "inverse-stieltjes") matched = verdict.inverse_stieltjes;
    else if (expect == "rs") matched = verdict.rs_class;
    else if (expect == "inner") matched = verdict.inner;
    else throw std::invalid_argument("unknown class \"" + expect + "\" for --expect");
    return matched ? kExitOk : kExitVerdict;
}

int run_verify(const std::string& relation_path, const std::string& family_path,
               const std::string& tag_name, const std::string& grid_spec, double tol,
               const std::string& out_path, const std::string& format) {
    const LinearRelation rel = relation_from_json(load_json_file(relation_path));
    const OperatorFamily fam = family_from_json(load_json_file(family_path));
    const RepresentationTag tag = representation_tag_from_name(tag_name);
    const VerificationReport rep =
        verify_representation(fam, rel, tag, load_grid(grid_spec), tol);
    emit(verification_to_json(rep), out_path,
         format == "csv" ? verification_csv(rep) : "");
    if (!rep.hypothesis_ok) {
        std::cerr << "hypothesis violated: " << rep.hypothesis_failure << "\n";
        return kExitVerdict;
    }
    return rep.pass ? kExitOk : kExitVerdict;
}

int run_realize(const std::string& moments_path, const std::string& out_path) {
    const MomentSequence moments = moments_from_json(load_json_file(moments_path));
    const RealizationResult result = ho_kalman_realize(moments);

    const MomentSequence back =
        moments_of(result.system, static_cast<Index>(moments.size()));
    double moment_err = 0.0;
    for (size_t k = 0; k < moments.size(); ++k)
        moment_err = std::max(moment_err, (moments[k] - back[k]).norm());

    // transfer function against the moment polynomial on |z| <= 1/2
    double window_err = 0.0;
    for (double r : {0.25, 0.5})
        for (int step = 0; step < 8; ++step) {
            const Complex z = std::polar(r, step * std::numbers::pi / 4);
            Matrix poly = Matrix::Zero(moments[0].rows(), moments[0].cols());
            Complex zk(1.0, 0.0);
            for (const Matrix& h : moments) {
                poly += zk * h;
                zk *= z;
            }
            window_err =
                std::max(window_err, (transfer(result.system, z) - poly).norm());
        }

    json report{{"state_dim", result.state_dim},
                {"rescaled", result.rescaled},
                {"moment_error", moment_err},
                {"window_transfer_error", window_err}};
    std::cout << report.dump(2) << "\n";
    if (!out_path.empty()) save_json_file(out_path, system_to_json(result.system));
    return kExitOk;
}

int run_model_check(const std::string& which, const std::string& grid_spec,
                    double tol, const std::string& out_path,
                    const std::string& format) {
    const std::vector<Complex> grid = load_grid(grid_spec);
    const auto rows = model_check(HalfLineModel{HalfLineModelKind::weighted_l2, {}}, grid);
    bool pass = true;
    for (const auto& row : rows) pass = pass && row.abs_err <= tol;

    // the extracted family must match the Phi- fixed point
    const HalfLineModel active{which == "ode" ? HalfLineModelKind::ode_boundary_triplet
                                              : HalfLineModelKind::weighted_l2,
                               {}};
    const OperatorFamily fam = model_family(active);
    const OperatorFamily r0 = fixed_point_family(FixedPointKind::r0, 1);
    double family_err = 0.0;
    for (Complex lambda : grid) {
        const auto a = to_operator(fam.eval(lambda));
        const auto b = to_operator(r0.eval(lambda));
        if (!a || !b) {
            pass = false;
            break;
        }
        family_err = std::max(family_err, std::abs((*a)(0, 0) - (*b)(0, 0)));
    }
    pass = pass && family_err <= tol;

    json report{{"model", which},
                {"rows", model_rows_to_json(rows)},
                {"family_vs_fixed_point", family_err},
                {"tolerance", tol},
                {"pass", pass}};
    emit(report, out_path, format == "csv" ? model_csv(rows) : "");
    return pass ? kExitOk : kExitVerdict;
}

int run_transform(const std::string& input_path, const std::string& op,
                  double c_re, double c_im, Index dim_m,
                  const std::string& out_path) {
    const Complex c(c_re, c_im);
    const json input = load_json_file(input_path);

    json output;
    if (op == "inverse-cayley" || op == "from-contraction") {
        const Matrix m = matrix_from_json(input);
        if (dim_m < 1 || dim_m > m.rows())
            throw std::invalid_argument("--dim-m must be in [1, n] for matrix inputs");
        const SpaceSplit split{dim_m, m.rows() - dim_m};
        output = relation_to_json(op == "inverse-cayley"
                                      ? inverse_cayley(m, split)
                                      : relation_from_contraction(m, split));
    } else {
        const LinearRelation rel = relation_from_json(input);
        if (op == "p") output = relation_to_json(p_transform(rel));
        else if (op == "j-m") output = relation_to_json(j_transform(rel, c, JSide::m_side));
        else if (op == "j-k") output = relation_to_json(j_transform(rel, c, JSide::k_side));
        else if (op == "neg-j-k")
            output = relation_to_json(negate(j_transform(rel, c, JSide::k_side)));
        else if (op == "inverse") output = relation_to_json(inverse(rel));
        else if (op == "adjoint") output = relation_to_json(adjoint(rel));
        else if (op == "negate") output = relation_to_json(negate(rel));
        else if (op == "cayley") output = matrix_to_json(cayley(rel));
        else if (op == "contraction") output = matrix_to_json(contraction_transform(rel));
        else if (op == "classify-relation") output = flags_to_json(classify(rel));
        else throw std::invalid_argument("unknown transform op \"" + op + "\"");
    }
    emit(output, out_path, "");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relkit: linear relations, Stieltjes families, and their representations"};
    app.require_subcommand(1);

    std::string grid_spec = "default";
    std::string out_path;
    std::string format = "json";
    double tol = 1e-8;
    unsigned long long seed = 0;
    app.add_option("--seed", seed, "PRNG seed for sampling-based checks");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--grid", grid_spec, "default or a JSON file of [re,im] pairs");
        cmd->add_option("--out", out_path, "write the report to this file");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    std::string family_path, relation_path, moments_path, input_path;
    std::string expect, tag, model = "l2", op;
    double c_re = 0.0, c_im = 1.0;
    Index dim_m = 1;

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify a family");
    classify_cmd->add_option("family", family_path, "family JSON")->required();
    classify_cmd->add_option("--expect", expect,
                             "nevanlinna|stieltjes|inverse-stieltjes|rs|inner");
    add_common(classify_cmd);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "verify a compressed-resolvent identity");
    verify_cmd->add_option("relation", relation_path, "relation JSON")->required();
    verify_cmd->add_option("family", family_path, "family JSON")->required();
    verify_cmd->add_option("--tag", tag, "representation tag")->required();
    verify_cmd->add_option("--tol", tol, "max admissible residual");
    add_common(verify_cmd);

    CLI::App* realize_cmd =
        app.add_subcommand("realize", "minimal selfadjoint realization from moments");
    realize_cmd->add_option("moments", moments_path, "moments JSON")->required();
    realize_cmd->add_option("--out", out_path, "write the system JSON here");

    CLI::App* model_cmd =
        app.add_subcommand("model-check", "half-line model oracle suite");
    model_cmd->add_option("--model", model, "l2 or ode")
        ->check(CLI::IsMember({"l2", "ode"}));
    model_cmd->add_option("--tol", tol, "max admissible error")->default_val(1e-7);
    add_common(model_cmd);

    CLI::App* transform_cmd =
        app.add_subcommand("transform", "apply a graph transformation");
    transform_cmd->add_option("input", input_path, "relation or matrix JSON")->required();
    transform_cmd
        ->add_option("--op", op,
                     "p|j-m|j-k|neg-j-k|inverse|adjoint|negate|cayley|contraction|"
                     "inverse-cayley|from-contraction|classify-relation")
        ->required();
    transform_cmd->add_option("--c-re", c_re, "Re of the unimodular constant");
    transform_cmd->add_option("--c-im", c_im, "Im of the unimodular constant");
    transform_cmd->add_option("--dim-m", dim_m, "dim of M for matrix inputs");
    transform_cmd->add_option("--out", out_path, "write the result here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify_cmd->parsed())
            return run_classify(family_path, grid_spec, expect, out_path, format);
        if (verify_cmd->parsed())
            return run_verify(relation_path, family_path, tag, grid_spec, tol,
                              out_path, format);
        if (realize_cmd->parsed()) return run_realize(moments_path, out_path);
        if (model_cmd->parsed())
            return run_model_check(model, grid_spec, tol, out_path, format);
        if (transform_cmd->parsed())
            return run_transform(input_path, op, c_re, c_im, dim_m, out_path);
    } catch (const RankAmbiguityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const SpectrumError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
