#include "smeans/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace smeans::io {

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path.string() + "'");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    return out;
}

std::size_t as_index(const Json& v, const char* what)
{
    if (!v.is_number_integer())
        throw DataError(std::string(what) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < 0)
        throw DataError(std::string(what) + " must be nonnegative");
    return static_cast<std::size_t>(x);
}

Json vector_to_json(const Eigen::VectorXd& v)
{
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const Json& j, const char* what)
{
    if (!j.is_array())
        throw DataError(std::string(what) + " must be an array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw DataError(std::string(what) + " must contain numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Json simplex_to_json(const Simplex& s)
{
    return Json(std::vector<VertexId>(s.vertices().begin(), s.vertices().end()));
}

Simplex simplex_from_json(const Json& j)
{
    if (!j.is_array())
        throw DataError("simplex must be an array of vertex indices");
    std::vector<VertexId> verts;
    for (const auto& v : j)
        verts.push_back(as_index(v, "vertex index"));
    return Simplex(std::move(verts));
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw DataError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string_view mode_name(NeighborhoodMode m)
{
    return m == NeighborhoodMode::interior ? "interior" : "closed";
}

} // namespace

PointCloud parse_cloud_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view text = trim(line);
        if (text.empty())
            continue;
        const auto cells = split(text, ',');
        if (first) {
            first = false;
            if (!cells.front().empty() && (cells.front()[0] == 'x' || cells.front()[0] == 'X')) {
                width = cells.size();
                continue;
            }
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto cell : cells) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw DataError("line " + std::to_string(lineno) + ": '" + std::string(cell) +
                                "' is not a number");
            row.push_back(v);
        }
        if (width == 0)
            width = row.size();
        if (row.size() != width)
            throw DataError("line " + std::to_string(lineno) + ": expected " +
                            std::to_string(width) + " columns, found " +
                            std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw DataError("point cloud file has no points");

    Eigen::MatrixXd pts(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < width; ++k)
            pts(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[i][k];
    return PointCloud(pts);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud)
{
    for (Eigen::Index k = 0; k < cloud.dim(); ++k)
        out << (k ? "," : "") << 'x' << k;
    out << '\n';
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
        for (Eigen::Index k = 0; k < cloud.dim(); ++k)
            out << (k ? "," : "") << format_double(cloud.points(k, i));
        out << '\n';
    }
}

PointCloud read_cloud_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    try {
        return parse_cloud_csv(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud)
{
    auto out = open_out(path);
    write_cloud_csv(out, cloud);
}

Json complex_to_json(const SimplicialComplex& K)
{
    Json facets = Json::array();
    for (const auto& f : K.facets())
        facets.push_back(simplex_to_json(f));
    return Json{{"vertices", K.vertex_count()}, {"facets", std::move(facets)}};
}

SimplicialComplex complex_from_json(const Json& j)
{
    const std::size_t n = as_index(field(j, "vertices"), "'vertices'");
    const Json& facets = field(j, "facets");
    if (!facets.is_array())
        throw DataError("'facets' must be an array");
    std::vector<Simplex> simplices;
    for (const auto& f : facets) {
        Simplex s = simplex_from_json(f);
        if (s.vertices().back() >= n)
            throw DataError("facet vertex index " + std::to_string(s.vertices().back()) +
                            " is out of range for " + std::to_string(n) + " vertices");
        simplices.push_back(std::move(s));
    }
    return SimplicialComplex::build(simplices, n);
}

Json matrix_columns_to_json(const Eigen::MatrixXd& m)
{
    Json rows = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        rows.push_back(vector_to_json(m.col(c)));
    return rows;
}

Eigen::MatrixXd matrix_columns_from_json(const Json& j, const char* what)
{
    if (!j.is_array())
        throw DataError(std::string(what) + " must be an array of points");
    if (j.empty())
        return {};
    const auto dim = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(j.size()));
    for (std::size_t c = 0; c < j.size(); ++c) {
        const Eigen::VectorXd v = vector_from_json(j[c], what);
        if (v.size() != dim)
            throw DataError(std::string(what) + " rows have inconsistent dimensions");
        m.col(static_cast<Eigen::Index>(c)) = v;
    }
    return m;
}

Json positions_to_json(const LinearMap& map)
{
    return Json{{"positions", matrix_columns_to_json(map.positions)}};
}

LinearMap positions_from_json(const Json& j)
{
    LinearMap map(matrix_columns_from_json(field(j, "positions"), "'positions'"));
    if (!map.all_finite())
        throw DataError("positions contain non-finite values");
    return map;
}

Json fit_to_json(const SimplicialComplex& K, const PointCloud& cloud, const FitResult& fit,
                 const FitConfig& cfg)
{
    Json assignments = Json::array();
    for (const auto& a : fit.assignments) {
        assignments.push_back(Json{{"facet", a.facet},
                                   {"simplex", simplex_to_json(a.point.simplex)},
                                   {"lambda", vector_to_json(a.point.lambda)},
                                   {"distance", a.distance}});
    }
    Json config{{"learning_rate", cfg.learning_rate},
                {"mode", mode_name(cfg.mode)},
                {"stop_tol", fit.stop_tol},
                {"max_iters", cfg.max_iters},
                {"adjacent_facet_accel", cfg.adjacent_facet_accel}};
    return Json{{"format", "smeans-fit"},
                {"version", 1},
                {"complex", complex_to_json(K)},
                {"positions", matrix_columns_to_json(fit.map.positions)},
                {"cloud", matrix_columns_to_json(cloud.points)},
                {"config", std::move(config)},
                {"iterations_run", fit.iterations_run},
                {"ssd_trace", fit.ssd_trace},
                {"displacement_trace", fit.displacement_trace},
                {"assignments", std::move(assignments)}};
}

LoadedFit fit_from_json(const Json& j)
{
    if (!j.is_object() || j.value("format", "") != "smeans-fit")
        throw DataError("not a fit file");

    LoadedFit out;
    out.complex = complex_from_json(field(j, "complex"));
    out.fit.map = LinearMap(matrix_columns_from_json(field(j, "positions"), "'positions'"));
    out.cloud = PointCloud(matrix_columns_from_json(field(j, "cloud"), "'cloud'"));
    if (static_cast<std::size_t>(out.fit.map.vertex_count()) != out.complex.vertex_count())
        throw DataError("fit positions do not match the complex");
    if (out.cloud.dim() != out.fit.map.ambient_dim())
        throw DataError("fit cloud dimension does not match the positions");

    out.fit.iterations_run = field(j, "iterations_run").get<int>();
    out.fit.ssd_trace = field(j, "ssd_trace").get<std::vector<double>>();
    out.fit.displacement_trace = j.value("displacement_trace", std::vector<double>{});
    out.fit.stop_tol = j.contains("config") ? j["config"].value("stop_tol", 0.0) : 0.0;

    const Json& assignments = field(j, "assignments");
    if (!assignments.is_array() || static_cast<Eigen::Index>(assignments.size()) != out.cloud.size())
        throw DataError("fit needs one assignment per point");
    for (const auto& a : assignments) {
        ProjectionResult res;
        res.point.simplex = simplex_from_json(field(a, "simplex"));
        res.point.lambda = vector_from_json(field(a, "lambda"), "'lambda'");
        if (static_cast<std::size_t>(res.point.lambda.size()) != res.point.simplex.size())
            throw DataError("assignment lambda does not match its simplex");
        if (!out.complex.contains(res.point.simplex))
            throw DataError("assignment simplex is not in the complex");
        res.facet = as_index(field(a, "facet"), "'facet'");
        if (res.facet >= out.complex.facet_count())
            throw DataError("assignment facet out of range");
        res.distance = field(a, "distance").get<double>();
        res.image = res.point.evaluate(out.fit.map);
        out.fit.assignments.push_back(std::move(res));
    }
    return out;
}

void write_trace_csv(std::ostream& out, const FitResult& fit)
{
    out << "iter,mean_ssd,max_displacement\n";
    for (std::size_t i = 0; i < fit.ssd_trace.size(); ++i) {
        const double disp = i < fit.displacement_trace.size() ? fit.displacement_trace[i] : 0.0;
        out << i << ',' << format_double(fit.ssd_trace[i]) << ',' << format_double(disp) << '\n';
    }
}

Json snapshot_to_json(int iteration, const LinearMap& map)
{
    return Json{{"iteration", iteration}, {"positions", matrix_columns_to_json(map.positions)}};
}

Json prune_to_json(const PruneResult& result, const PruneConfig& cfg)
{
    Json points = Json::array();
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        points.push_back(Json{{"simplex", simplex_to_json(result.points[i].simplex)},
                              {"lambda", vector_to_json(result.points[i].lambda)},
                              {"steps", result.steps[i]}});
    }
    return Json{{"format", "smeans-prune"},
                {"version", 1},
                {"config",
                 {{"alpha", cfg.alpha},
                  {"mode", cfg.mode == PruneMode::euclidean ? "euclidean" : "bary-min"},
                  {"alpha_decay", cfg.alpha_decay}}},
                {"complex", complex_to_json(result.reduced.complex)},
                {"vertex_map", result.reduced.vertex_map},
                {"points", std::move(points)}};
}

void write_codes_jsonl(std::ostream& out, const PruneResult& result, const LinearMap& g,
                       const PointCloud& cloud)
{
    if (static_cast<Eigen::Index>(result.points.size()) != cloud.size())
        throw DataError("prune result does not match the cloud");
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const ReducedCode code = reduced_representation(result, g, i);
        const double residual =
            (cloud.point(static_cast<Eigen::Index>(i)) - code.reconstruction).norm();
        Json rec{{"y_index", i},
                 {"simplex", simplex_to_json(code.simplex)},
                 {"lambda", vector_to_json(code.lambda)},
                 {"reconstruction", vector_to_json(code.reconstruction)},
                 {"residual", residual}};
        out << rec.dump() << '\n';
    }
}

Json metrics_to_json(double mean_ssd, const HausdorffParts& hausdorff, int sample_density)
{
    return Json{{"mean_ssd", mean_ssd},
                {"hausdorff", hausdorff.value()},
                {"sample_density", sample_density},
                {"cloud_to_complex", hausdorff.cloud_to_complex},
                {"complex_to_cloud", hausdorff.complex_to_cloud}};
}

Json read_json_file(const std::filesystem::path& path)
{
    auto in = open_in(path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    auto out = open_out(path);
    out << j.dump(1) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    auto out = open_out(path);
    out << text;
}

} // namespace smeans::io
