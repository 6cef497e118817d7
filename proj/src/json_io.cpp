#include "relkit/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace relkit {

namespace {

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

const json& require(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw std::invalid_argument(std::string("missing field \"") + field + "\"");
    return *it;
}

} // namespace

json matrix_to_json(const Matrix& m) {
    json re = json::array();
    json im = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j) {
    const Index rows = require(j, "rows").get<Index>();
    const Index cols = require(j, "cols").get<Index>();
    const auto& re = require(j, "re");
    const auto& im = require(j, "im");
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("matrix dimensions must be nonnegative");
    if (static_cast<Index>(re.size()) != rows * cols ||
        static_cast<Index>(im.size()) != rows * cols)
        throw std::invalid_argument("matrix entry arrays have the wrong length");
    Matrix m(rows, cols);
    Index idx = 0;
    for (Index i = 0; i < rows; ++i)
        for (Index jj = 0; jj < cols; ++jj, ++idx)
            m(i, jj) = Complex(re[static_cast<size_t>(idx)].get<double>(),
                               im[static_cast<size_t>(idx)].get<double>());
    if (!is_finite(m))
        throw std::invalid_argument("matrix has non-finite entries");
    return m;
}

json subspace_to_json(const Subspace& s) {
    return json{{"ambient_dim", s.ambient_dim}, {"frame", matrix_to_json(s.frame)}};
}

json relation_to_json(const LinearRelation& r) {
    return json{{"dim_m", r.split().dim_m},
                {"dim_k", r.split().dim_k},
                {"frame", matrix_to_json(r.frame())}};
}

LinearRelation relation_from_json(const json& j, const ToleranceContext& tol) {
    SpaceSplit split{require(j, "dim_m").get<Index>(), require(j, "dim_k").get<Index>()};
    return LinearRelation(split, matrix_from_json(require(j, "frame")), tol);
}

json system_to_json(const PassiveSystem& sys) {
    return json{{"d", matrix_to_json(sys.d)},
                {"c", matrix_to_json(sys.c)},
                {"b", matrix_to_json(sys.b)},
                {"f", matrix_to_json(sys.f)},
                {"selfadjoint", sys.selfadjoint}};
}

PassiveSystem system_from_json(const json& j) {
    PassiveSystem sys;
    sys.d = matrix_from_json(require(j, "d"));
    sys.c = matrix_from_json(require(j, "c"));
    sys.b = matrix_from_json(require(j, "b"));
    sys.f = matrix_from_json(require(j, "f"));
    sys.selfadjoint = require(j, "selfadjoint").get<bool>();
    sys.validate();
    return sys;
}

json moments_to_json(const MomentSequence& m) {
    json arr = json::array();
    for (const Matrix& h : m) arr.push_back(matrix_to_json(h));
    return arr;
}

MomentSequence moments_from_json(const json& j) {
    if (!j.is_array())
        throw std::invalid_argument("moments: expected an array of matrices");
    MomentSequence out;
    for (const auto& item : j) out.push_back(matrix_from_json(item));
    return out;
}

std::string representation_tag_name(RepresentationTag tag) {
    switch (tag) {
        case RepresentationTag::opexpr: return "opexpr";
        case RepresentationTag::aarep: return "aarep";
        case RepresentationTag::brep: return "brep";
        case RepresentationTag::arep: return "arep";
        case RepresentationTag::opexpr3: return "opexpr3";
        case RepresentationTag::einundzwan: return "einundzwan";
        case RepresentationTag::einundzwan2: return "einundzwan2";
    }
    throw std::logic_error("unknown representation tag");
}

RepresentationTag representation_tag_from_name(const std::string& name) {
    if (name == "opexpr") return RepresentationTag::opexpr;
    if (name == "aarep") return RepresentationTag::aarep;
    if (name == "brep") return RepresentationTag::brep;
    if (name == "arep") return RepresentationTag::arep;
    if (name == "opexpr3") return RepresentationTag::opexpr3;
    if (name == "einundzwan") return RepresentationTag::einundzwan;
    if (name == "einundzwan2") return RepresentationTag::einundzwan2;
    throw std::invalid_argument("unknown representation tag \"" + name + "\"");
}

namespace {

std::string bridge_name(Bridge b) {
    switch (b) {
        case Bridge::formula1_q: return "formula1";
        case Bridge::formula2_r: return "formula2";
        case Bridge::direct_schur: return "direct-schur";
    }
    throw std::logic_error("unknown bridge");
}

Bridge bridge_from_name(const std::string& name) {
    if (name == "formula1") return Bridge::formula1_q;
    if (name == "formula2") return Bridge::formula2_r;
    if (name == "direct-schur") return Bridge::direct_schur;
    throw std::invalid_argument("unknown bridge \"" + name + "\"");
}

} // namespace

json family_to_json(const OperatorFamily& fam) {
    return std::visit(
        [](const auto& b) -> json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, SystemBackend>) {
                return json{{"backend", "system"},
                            {"system", system_to_json(b.system)},
                            {"bridge", bridge_name(b.bridge)}};
            } else if constexpr (std::is_same_v<T, RelationBackend>) {
                return json{{"backend", "relation"},
                            {"relation", relation_to_json(b.relation)},
                            {"tag", representation_tag_name(b.tag)}};
            } else if constexpr (std::is_same_v<T, FixedPointBackend>) {
                return json{{"backend", "closed-form"},
                            {"kind", b.kind == FixedPointKind::q0 ? "q0" : "r0"},
                            {"dim_m", b.dim_m}};
            } else if constexpr (std::is_same_v<T, ConstantBackend>) {
                return json{{"backend", "closed-form"},
                            {"kind", "constant"},
                            {"relation", relation_to_json(b.value)}};
            } else if constexpr (std::is_same_v<T, InnerBackend>) {
                return json{{"backend", "closed-form"},
                            {"kind", b.stieltjes ? "inner-stieltjes"
                                                 : "inner-inverse-stieltjes"},
                            {"generator", relation_to_json(b.generator)}};
            } else {
                throw std::invalid_argument(
                    "family_to_json: derived families are not serializable");
            }
        },
        fam.backend());
}

OperatorFamily family_from_json(const json& j, const ToleranceContext& tol) {
    const std::string backend = require(j, "backend").get<std::string>();
    if (backend == "system") {
        return OperatorFamily(
            SystemBackend{system_from_json(require(j, "system")),
                          bridge_from_name(require(j, "bridge").get<std::string>())},
            tol);
    }
    if (backend == "relation") {
        return OperatorFamily(
            RelationBackend{
                relation_from_json(require(j, "relation"), tol),
                representation_tag_from_name(require(j, "tag").get<std::string>())},
            tol);
    }
    if (backend == "closed-form") {
        const std::string kind = require(j, "kind").get<std::string>();
        if (kind == "q0" || kind == "r0")
            return OperatorFamily(
                FixedPointBackend{kind == "q0" ? FixedPointKind::q0 : FixedPointKind::r0,
                                  require(j, "dim_m").get<Index>()},
                tol);
        if (kind == "constant")
            return OperatorFamily(
                ConstantBackend{relation_from_json(require(j, "relation"), tol)}, tol);
        if (kind == "inner-stieltjes" || kind == "inner-inverse-stieltjes")
            return OperatorFamily(
                InnerBackend{relation_from_json(require(j, "generator"), tol),
                             kind == "inner-stieltjes"},
                tol);
        throw std::invalid_argument("unknown closed-form kind \"" + kind + "\"");
    }
    throw std::invalid_argument("unknown family backend \"" + backend + "\"");
}

json grid_to_json(const std::vector<Complex>& grid) {
    json arr = json::array();
    for (Complex v : grid) arr.push_back(complex_to_json(v));
    return arr;
}

std::vector<Complex> grid_from_json(const json& j) {
    if (!j.is_array())
        throw std::invalid_argument("grid: expected an array of [re, im] pairs");
    std::vector<Complex> grid;
    for (const auto& item : j) grid.push_back(complex_from_json(item));
    return grid;
}

json flags_to_json(const ClassificationFlags& fl) {
    json flags{{"symmetric", fl.symmetric},
               {"selfadjoint", fl.selfadjoint},
               {"nonnegative", fl.nonnegative},
               {"nonpositive", fl.nonpositive},
               {"accretive", fl.accretive},
               {"maximal_accretive", fl.maximal_accretive},
               {"dissipative", fl.dissipative},
               {"maximal_dissipative", fl.maximal_dissipative},
               {"skew_symmetric", fl.skew_symmetric},
               {"skew_selfadjoint", fl.skew_selfadjoint},
               {"j_selfadjoint", fl.j_selfadjoint},
               {"is_operator", fl.is_operator}};
    return json{{"flags", flags}, {"residuals", fl.residuals}};
}

json verdict_to_json(const FamilyVerdict& v) {
    return json{{"nevanlinna", v.nevanlinna},
                {"stieltjes", v.stieltjes},
                {"inverse_stieltjes", v.inverse_stieltjes},
                {"rs_class", v.rs_class},
                {"inner", v.inner},
                {"holomorphy_heuristic", v.holomorphy_heuristic},
                {"reasons", v.reasons},
                {"residuals", v.residuals}};
}

json verification_to_json(const VerificationReport& rep) {
    json rows = json::array();
    for (const VerificationRow& row : rep.rows)
        rows.push_back(json{{"lambda", complex_to_json(row.lambda)},
                            {"residual", row.residual},
                            {"pass", row.pass}});
    return json{{"tag", representation_tag_name(rep.tag)},
                {"hypothesis_ok", rep.hypothesis_ok},
                {"hypothesis_failure", rep.hypothesis_failure},
                {"rows", rows},
                {"summary",
                 json{{"max_residual", rep.max_residual},
                      {"tolerance", rep.tolerance},
                      {"pass", rep.pass}}}};
}

json model_rows_to_json(const std::vector<ModelCheckRow>& rows) {
    json arr = json::array();
    for (const ModelCheckRow& row : rows)
        arr.push_back(json{{"lambda", complex_to_json(row.lambda)},
                           {"quadrature", complex_to_json(row.quadrature)},
                           {"closed_form", complex_to_json(row.closed_form)},
                           {"abs_err", row.abs_err}});
    return arr;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open \"" + path + "\" for writing");
    out << j.dump(2) << "\n";
}

} // namespace relkit
