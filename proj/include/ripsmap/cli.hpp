#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ripsmap.hpp"

namespace ripsmap::cli {

// Exit codes, one per error class.
enum ExitCode : int {
    kOk = 0,
    kBadArgs = 2,
    kIoFailure = 3,
    kBudget = 4,
    kAlgorithm = 5,
};

namespace detail {

inline std::size_t simplex_budget_from_env() {
    const char* env = std::getenv("RIPSMAP_SIMPLEX_BUDGET");
    if (env == nullptr || *env == '\0') return kDefaultSimplexBudget;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || value == 0)
        throw InvalidArgument("RIPSMAP_SIMPLEX_BUDGET must be a positive integer");
    return static_cast<std::size_t>(value);
}

struct InputSource {
    std::string input_path;
    std::string encoding_path;
    std::string labels_path;
    std::string preset;
    std::uint64_t seed = 0;

    // generator parameters (annulus / square presets)
    Eigen::Index n = 0;
    double r_inner = 1.0;
    double r_outer = 2.0;
    std::vector<double> corner{0.0, 0.0};
    double side = 1.0;

    PointCloud load() const {
        if (!preset.empty()) {
            if (preset == "two-squares") return two_squares(seed);
            if (preset == "two-circles") return two_circles(seed);
            if (preset == "annulus")
                return with_uniform_label(generate_annulus(n, r_inner, r_outer, seed),
                                          "annulus");
            if (preset == "square")
                return with_uniform_label(
                    generate_square(n, corner.at(0), corner.at(1), side, seed), "square");
            throw InvalidArgument("unknown preset: " + preset);
        }
        PointCloud cloud;
        if (!encoding_path.empty()) {
            cloud = load_table(input_path, EncodingSpec::from_json_file(encoding_path));
        } else {
            cloud = points_from_csv(read_file(input_path));
            if (!labels_path.empty()) {
                cloud.labels = labels_from_csv(read_file(labels_path));
                if (static_cast<Eigen::Index>(cloud.labels.size()) != cloud.size())
                    throw InvalidArgument("label file row count does not match points");
            }
        }
        cloud.validate();
        return cloud;
    }
};

inline void add_input_flags(CLI::App* cmd, InputSource& src) {
    auto* input = cmd->add_option("--input", src.input_path, "point CSV (headerless) or table");
    auto* preset = cmd->add_option("--preset", src.preset,
                                   "two-squares | two-circles | annulus | square");
    input->excludes(preset);
    preset->excludes(input);
    cmd->add_option("--encoding", src.encoding_path,
                    "encoding spec JSON for --input tables with a header row");
    cmd->add_option("--labels", src.labels_path, "optional label CSV for --input");
    cmd->add_option("--seed", src.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--n", src.n, "point count (annulus/square preset)");
    cmd->add_option("--r-inner", src.r_inner, "annulus inner radius")->capture_default_str();
    cmd->add_option("--r-outer", src.r_outer, "annulus outer radius")->capture_default_str();
    cmd->add_option("--corner", src.corner, "square lower-left corner x y")->expected(2);
    cmd->add_option("--side", src.side, "square side length")->capture_default_str();
}

inline void require_input(const CLI::App* cmd, const InputSource& src) {
    if (src.input_path.empty() && src.preset.empty())
        throw InvalidArgument(cmd->get_name() + " needs --input or --preset");
}

inline nlohmann::json metadata_base(const std::string& command, const InputSource& src) {
    nlohmann::json meta;
    meta["tool"] = "ripsmap";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["seed"] = src.seed;
    nlohmann::json in;
    if (!src.preset.empty()) {
        in["preset"] = src.preset;
        if (src.preset == "annulus") {
            in["n"] = src.n;
            in["r_inner"] = src.r_inner;
            in["r_outer"] = src.r_outer;
        } else if (src.preset == "square") {
            in["n"] = src.n;
            in["corner"] = src.corner;
            in["side"] = src.side;
        }
    } else {
        in["input"] = src.input_path;
        if (!src.encoding_path.empty()) in["encoding"] = src.encoding_path;
        if (!src.labels_path.empty()) in["labels"] = src.labels_path;
    }
    meta["source"] = std::move(in);
    return meta;
}

inline void write_metadata(const std::filesystem::path& out_dir, nlohmann::json meta) {
    write_file_atomic(out_dir / "metadata.json", meta.dump(2) + "\n");
}

inline std::filesystem::path prepare_out_dir(const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    return dir;
}

inline std::vector<std::string> parse_format_list(const std::string& formats) {
    std::vector<std::string> out = split_line(formats, ',');
    for (const auto& f : out)
        if (f != "csv" && f != "json" && f != "dot")
            throw InvalidArgument("unknown format: " + f);
    return out;
}

inline bool wants(const std::vector<std::string>& formats, const std::string& format) {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

}  // namespace detail

// Runs one toolkit command; args exclude the program name. Returns the
// process exit code and reports errors on stderr.
inline int run(std::vector<std::string> args) {
    CLI::App app{"ripsmap: persistence diagrams, barcodes, and Mapper graphs for point clouds"};
    app.require_subcommand(1);

    detail::InputSource src;
    std::string out_dir;
    std::string metric_name_flag = "euclidean";
    std::string format_flag;

    // generate
    auto* generate = app.add_subcommand("generate", "write a synthetic dataset");
    detail::add_input_flags(generate, src);
    generate->add_option("--out-dir", out_dir, "output directory")->required();

    // persist
    auto* persist = app.add_subcommand(
        "persist", "persistence diagram, barcode, and Betti curve of a cloud");
    detail::add_input_flags(persist, src);
    persist->add_option("--out-dir", out_dir, "output directory")->required();
    int max_dim = 1;
    double max_eps_flag = 0.0;
    bool all_dims = false;
    persist->add_option("--max-dim", max_dim, "top homology dimension")->capture_default_str();
    auto* max_eps_opt =
        persist->add_option("--max-eps", max_eps_flag,
                            "distance threshold (defaults to the diameter for n <= 64)");
    persist->add_option("--metric", metric_name_flag, "euclidean | manhattan")
        ->capture_default_str();
    persist->add_flag("--all-dims", all_dims,
                      "also report pairs of the top dimension and ephemeral pairs");

    // mapper
    auto* mapper_cmd = app.add_subcommand("mapper", "Mapper nerve of a cloud");
    detail::add_input_flags(mapper_cmd, src);
    mapper_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    std::string lens_flag = "coordinate:0";
    std::string clusterer_flag = "single-linkage";
    int intervals = 10;
    double overlap = 0.3;
    double dbscan_eps = 0.5;
    int min_pts = 5;
    int k_flag = 2;
    int nerve_dim = 1;
    mapper_cmd->add_option("--lens", lens_flag, "coordinate:AXIS | pca:K | external:FILE")
        ->capture_default_str();
    mapper_cmd->add_option("--intervals", intervals, "cover intervals per lens dimension")
        ->capture_default_str();
    mapper_cmd->add_option("--overlap", overlap, "cover overlap fraction in [0,1)")
        ->capture_default_str();
    mapper_cmd
        ->add_option("--clusterer", clusterer_flag, "single-linkage | dbscan | kmeans")
        ->capture_default_str();
    mapper_cmd->add_option("--eps", dbscan_eps, "dbscan radius")->capture_default_str();
    mapper_cmd->add_option("--min-pts", min_pts, "dbscan core threshold")->capture_default_str();
    mapper_cmd->add_option("--k", k_flag, "kmeans cluster count")->capture_default_str();
    mapper_cmd->add_option("--nerve-dim", nerve_dim, "top nerve dimension")->capture_default_str();
    mapper_cmd->add_option("--metric", metric_name_flag, "euclidean | manhattan")
        ->capture_default_str();
    mapper_cmd->add_option("--format", format_flag, "comma list among {json,dot}; default both");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "flat clustering of a cloud");
    detail::add_input_flags(cluster_cmd, src);
    cluster_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    std::string cluster_algo;
    cluster_cmd->add_option("--clusterer", cluster_algo, "kmeans | single-linkage | dbscan")
        ->required();
    auto* cluster_k = cluster_cmd->add_option("--k", k_flag, "cluster count");
    cluster_cmd->add_option("--eps", dbscan_eps, "dbscan radius")->capture_default_str();
    cluster_cmd->add_option("--min-pts", min_pts, "dbscan core threshold")
        ->capture_default_str();
    cluster_cmd->add_option("--metric", metric_name_flag, "euclidean | manhattan")
        ->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    try {
        const std::filesystem::path dir = detail::prepare_out_dir(out_dir);

        if (app.got_subcommand(generate)) {
            detail::require_input(generate, src);
            if (src.preset.empty())
                throw InvalidArgument("generate needs --preset");
            const PointCloud cloud = src.load();
            write_file_atomic(dir / "points.csv", points_to_csv(cloud));
            write_file_atomic(dir / "labels.csv", labels_to_csv(cloud.labels));
            nlohmann::json meta = detail::metadata_base("generate", src);
            meta["points"] = cloud.size();
            detail::write_metadata(dir, std::move(meta));
            return kOk;
        }

        if (app.got_subcommand(persist)) {
            detail::require_input(persist, src);
            const PointCloud cloud = src.load();
            const Metric metric = parse_metric(metric_name_flag);
            nlohmann::json meta = detail::metadata_base("persist", src);
            meta["max_dim"] = max_dim;
            meta["metric"] = ripsmap::metric_name(metric);
            meta["all_dims"] = all_dims;

            if (cloud.size() == 0) {
                write_file_atomic(dir / "diagram.csv", "dimension,birth,death\n");
                write_file_atomic(dir / "barcode.csv", "dimension,order,birth,death\n");
                write_file_atomic(dir / "betti_curve.csv", "eps\n");
                meta["max_eps"] = max_eps_flag;
                detail::write_metadata(dir, std::move(meta));
                return kOk;
            }

            const DistanceMatrix dist = distance_matrix(cloud, metric);
            double max_eps = max_eps_flag;
            if (max_eps_opt->count() == 0) {
                if (cloud.size() > 64)
                    throw InvalidArgument(
                        "--max-eps is required for more than 64 points");
                max_eps = dist.max_entry();
                if (max_eps <= 0.0) max_eps = 1.0;  // coincident points
            }
            meta["max_eps"] = max_eps;

            PersistenceDiagram diagram;
            try {
                diagram = rips_persistence(dist, max_dim, max_eps,
                                           detail::simplex_budget_from_env());
            } catch (const BudgetExceeded& e) {
                throw BudgetExceeded(std::string(e.what()) +
                                         "; lower --max-eps or subsample the input",
                                     e.count_reached);
            }

            write_file_atomic(dir / "diagram.csv",
                              diagram_to_csv(diagram, all_dims, all_dims));
            write_file_atomic(dir / "barcode.csv",
                              barcode_to_csv(barcode(diagram, false, all_dims)));

            std::string curve = "eps";
            const int top_reported = all_dims ? diagram.max_dim
                                              : std::max(diagram.max_dim - 1, 0);
            for (int d = 0; d <= top_reported; ++d)
                curve += ",beta_" + std::to_string(d);
            curve += '\n';
            for (int s = 0; s < 100; ++s) {
                const double eps = max_eps * s / 99.0;
                const auto betti = betti_numbers(diagram, eps, all_dims);
                curve += format_double(eps);
                for (int d = 0; d <= top_reported; ++d)
                    curve += ',' + std::to_string(betti[static_cast<std::size_t>(d)]);
                curve += '\n';
            }
            write_file_atomic(dir / "betti_curve.csv", curve);
            detail::write_metadata(dir, std::move(meta));
            return kOk;
        }

        if (app.got_subcommand(mapper_cmd)) {
            detail::require_input(mapper_cmd, src);
            const PointCloud cloud = src.load();

            Lens lens;
            const auto colon = lens_flag.find(':');
            const std::string lens_kind = lens_flag.substr(0, colon);
            const std::string lens_arg =
                colon == std::string::npos ? "" : lens_flag.substr(colon + 1);
            if (lens_kind == "coordinate") {
                lens = Lens::coordinate(lens_arg.empty() ? 0 : std::stoi(lens_arg));
            } else if (lens_kind == "pca") {
                lens = Lens::pca(lens_arg.empty() ? 2 : std::stoi(lens_arg));
            } else if (lens_kind == "external") {
                if (lens_arg.empty())
                    throw InvalidArgument("external lens needs a file: external:FILE");
                lens = Lens::external(points_from_csv(read_file(lens_arg)).points);
            } else {
                throw InvalidArgument("unknown lens: " + lens_flag);
            }

            MapperParams params;
            params.n_intervals = intervals;
            params.overlap = overlap;
            params.nerve_dim = nerve_dim;
            params.seed = src.seed;
            params.metric = parse_metric(metric_name_flag);
            if (clusterer_flag == "single-linkage")
                params.clusterer = SingleLinkageGapClusterer{};
            else if (clusterer_flag == "dbscan")
                params.clusterer = DbscanClusterer{dbscan_eps, min_pts};
            else if (clusterer_flag == "kmeans")
                params.clusterer = KMeansClusterer{k_flag};
            else
                throw InvalidArgument("unknown clusterer: " + clusterer_flag);

            const MapperNerve nerve = run_mapper(cloud, lens, params);

            const std::vector<std::string> formats =
                format_flag.empty() ? std::vector<std::string>{"json", "dot"}
                                    : detail::parse_format_list(format_flag);
            for (const auto& f : formats)
                if (f != "json" && f != "dot")
                    throw InvalidArgument("mapper emits json and dot, not " + f);
            if (detail::wants(formats, "json"))
                write_file_atomic(dir / "nerve.json", nerve_to_json(nerve).dump(2) + "\n");
            if (detail::wants(formats, "dot"))
                write_file_atomic(dir / "nerve.dot", nerve_to_dot(nerve, cloud));

            nlohmann::json meta = detail::metadata_base("mapper", src);
            meta["lens"] = lens_flag;
            meta["intervals"] = intervals;
            meta["overlap"] = overlap;
            meta["clusterer"] = clusterer_flag;
            if (clusterer_flag == "dbscan") {
                meta["eps"] = dbscan_eps;
                meta["min_pts"] = min_pts;
            }
            if (clusterer_flag == "kmeans") meta["k"] = k_flag;
            meta["nerve_dim"] = nerve_dim;
            meta["metric"] = metric_name_flag;
            meta["nodes"] = nerve.nodes.size();
            meta["components"] = connected_components(nerve);
            detail::write_metadata(dir, std::move(meta));
            return kOk;
        }

        if (app.got_subcommand(cluster_cmd)) {
            detail::require_input(cluster_cmd, src);
            const PointCloud cloud = src.load();
            const Metric metric = parse_metric(metric_name_flag);

            ClusterAssignment assignment;
            nlohmann::json summary;
            summary["algorithm"] = cluster_algo;
            if (cluster_algo == "kmeans") {
                if (cluster_k->count() == 0)
                    throw InvalidArgument("kmeans needs --k");
                KMeansParams kp;
                kp.k = k_flag;
                kp.seed = src.seed;
                const KMeansResult result = kmeans(cloud, kp);
                assignment = result.assignment;
                summary["inertia"] = result.inertia;
                summary["iterations"] = result.iterations;
                summary["converged"] = result.converged;
            } else if (cluster_algo == "single-linkage") {
                const Dendrogram dendro = single_linkage(distance_matrix(cloud, metric));
                assignment = cluster_k->count() > 0 ? cut_fixed_count(dendro, k_flag)
                                                    : cut_histogram_gap(dendro);
            } else if (cluster_algo == "dbscan") {
                assignment = dbscan(distance_matrix(cloud, metric), dbscan_eps, min_pts);
                summary["noise_count"] = assignment.noise_count();
            } else {
                throw InvalidArgument("unknown clusterer: " + cluster_algo);
            }

            std::string csv = "point_index,label\n";
            for (std::size_t i = 0; i < assignment.labels.size(); ++i)
                csv += std::to_string(i) + ',' + std::to_string(assignment.labels[i]) + '\n';
            write_file_atomic(dir / "assignment.csv", csv);

            std::vector<std::size_t> sizes(static_cast<std::size_t>(assignment.k), 0);
            for (const int l : assignment.labels)
                if (l != kNoise) ++sizes[static_cast<std::size_t>(l)];
            summary["k"] = assignment.k;
            summary["cluster_sizes"] = sizes;
            write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");

            nlohmann::json meta = detail::metadata_base("cluster", src);
            meta["clusterer"] = cluster_algo;
            if (cluster_algo == "kmeans" || cluster_k->count() > 0) meta["k"] = k_flag;
            if (cluster_algo == "dbscan") {
                meta["eps"] = dbscan_eps;
                meta["min_pts"] = min_pts;
            }
            meta["metric"] = metric_name_flag;
            detail::write_metadata(dir, std::move(meta));
            return kOk;
        }

        throw InvalidArgument("no subcommand");
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAlgorithm;
    }
}

}  // namespace ripsmap::cli
