#include "qwalk/cli.hpp"

#include "qwalk/analytic.hpp"
#include "qwalk/embedding.hpp"
#include "qwalk/metrics.hpp"
#include "qwalk/propagators.hpp"
#include "qwalk/stencil.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace qwalk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void to_json(json& j, const RunParameters& p)
{
    j = json{{"order", p.order},
             {"order_y", p.order_y},
             {"nodes", p.nodes},
             {"nodes_y", p.nodes_y},
             {"lambda", p.lambda},
             {"lambdas", p.lambdas},
             {"m", p.m},
             {"dx", p.dx},
             {"time", p.time},
             {"quantum_time", p.quantum_time},
             {"gamma", p.gamma},
             {"boundary", p.boundary},
             {"n_range", p.n_range},
             {"repeats", p.repeats},
             {"seed", p.seed},
             {"stub_engines", p.stub_engines}};
}

void from_json(const json& j, RunParameters& p)
{
    const RunParameters defaults;
    p.order = j.value("order", defaults.order);
    p.order_y = j.value("order_y", defaults.order_y);
    p.nodes = j.value("nodes", defaults.nodes);
    p.nodes_y = j.value("nodes_y", defaults.nodes_y);
    p.lambda = j.value("lambda", defaults.lambda);
    p.lambdas = j.value("lambdas", defaults.lambdas);
    p.m = j.value("m", defaults.m);
    p.dx = j.value("dx", defaults.dx);
    p.time = j.value("time", defaults.time);
    p.quantum_time = j.value("quantum_time", defaults.quantum_time);
    p.gamma = j.value("gamma", defaults.gamma);
    p.boundary = j.value("boundary", defaults.boundary);
    p.n_range = j.value("n_range", defaults.n_range);
    p.repeats = j.value("repeats", defaults.repeats);
    p.seed = j.value("seed", defaults.seed);
    p.stub_engines = j.value("stub_engines", defaults.stub_engines);
}

void to_json(json& j, const RunManifest& m)
{
    j = json{{"command", m.command},
             {"parameters", m.parameters},
             {"engine_version", m.engine_version},
             {"timestamp", m.timestamp}};
}

void from_json(const json& j, RunManifest& m)
{
    j.at("command").get_to(m.command);
    j.at("parameters").get_to(m.parameters);
    j.at("engine_version").get_to(m.engine_version);
    j.at("timestamp").get_to(m.timestamp);
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<int> parse_range(const std::string& spec)
{
    int lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw std::invalid_argument("range must look like lo:hi:step, got '" + spec + "'");
    if (step <= 0 || lo < 1 || hi < lo)
        throw std::invalid_argument("range needs 1 <= lo <= hi and step > 0");
    std::vector<int> out;
    for (int n = lo; n <= hi; n += step)
        out.push_back(n);
    return out;
}

void write_file_atomic(const fs::path& path, const std::string& contents)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << contents;
        if (!os.flush())
            throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path);
}

namespace {

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

TransitionRates rates_for(int order)
{
    switch (order) {
    case 1: return stencil_to_rates(laplacian_stencil(StencilOrder::Order1));
    case 10: return stencil_to_rates(laplacian_stencil(StencilOrder::Order10));
    default: throw std::invalid_argument("order must be 1 or 10");
    }
}

Boundary boundary_for(const std::string& name)
{
    if (name == "periodic")
        return Boundary::Periodic;
    if (name == "truncated")
        return Boundary::Truncated;
    throw std::invalid_argument("boundary must be periodic or truncated");
}

void check_geometry(int order, int nodes, int lambda, int m, double dx)
{
    if (nodes < 2)
        throw std::invalid_argument("nodes must be at least 2");
    if (lambda < 1)
        throw std::invalid_argument("lambda must be positive");
    if (m < 1)
        throw std::invalid_argument("m must be positive");
    if (lambda > m)
        throw std::invalid_argument("lambda must not exceed m");
    if (!(dx > 0))
        throw std::invalid_argument("dx must be positive");
    const int d = rates_for(order).half_width;
    if (nodes <= 2 * d)
        throw std::invalid_argument("nodes must exceed twice the stencil half-width");
}

void validate(const std::string& command, const RunParameters& p)
{
    if (!std::isfinite(p.time) || !std::isfinite(p.quantum_time))
        throw std::invalid_argument("time must be finite");
    boundary_for(p.boundary);
    if (command == "run1d") {
        check_geometry(p.order, p.nodes, p.lambda, p.m, p.dx);
    } else if (command == "sweep") {
        if (p.lambdas.empty())
            throw std::invalid_argument("lambdas must not be empty");
        for (const int lambda : p.lambdas)
            check_geometry(p.order, p.nodes, lambda, p.m, p.dx);
        if (p.boundary != "periodic")
            throw std::invalid_argument("sweep runs on periodic rings only");
    } else if (command == "run2d") {
        check_geometry(p.order, p.nodes, p.lambda, p.m, p.dx);
        check_geometry(p.order_y, p.nodes, p.lambda, p.m, p.dx);
        if (p.nodes_y != 0 && p.nodes_y != p.nodes)
            throw std::invalid_argument("kernel sizes must match: nodes-y differs from nodes");
        if (p.boundary != "periodic")
            throw std::invalid_argument("run2d runs on periodic meshes only");
    } else if (command == "classical") {
        if (p.nodes < 2)
            throw std::invalid_argument("nodes must be at least 2");
        if (!(p.gamma > 0))
            throw std::invalid_argument("gamma must be positive");
    } else if (command == "bench") {
        if (p.repeats < 3)
            throw std::invalid_argument("repeats must be at least 3");
        const auto ns = parse_range(p.n_range);
        const int d = rates_for(p.order).half_width;
        if (ns.front() <= 2 * d)
            throw std::invalid_argument("smallest n must exceed twice the stencil half-width");
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
}

std::string distribution_csv(const NodeDistribution& dist)
{
    std::string s = "node_index,probability\n";
    for (Eigen::Index i = 0; i < dist.labels.size(); ++i)
        s += std::to_string(dist.labels[i]) + "," + format_double(dist.probabilities[i]) + "\n";
    return s;
}

NodeDistribution embedded_distribution(const RunParameters& p, int lambda)
{
    const TransitionRates rates = rates_for(p.order);
    const EmbeddingSpec spec(p.nodes, lambda, p.m);
    if (boundary_for(p.boundary) == Boundary::Periodic)
        return extract_nodes(embedded_walk(rates, spec, p.dx, p.time), spec);

    // Truncated line: no circulant structure, so evolve densely.
    const DenseOperator h = rates_to_dense(dilate(rates, lambda), static_cast<int>(spec.total_length()),
                                           Boundary::Truncated);
    GaussianPacketSpec packet;
    packet.width = p.dx;
    return extract_nodes(evolve_direct(h, gaussian_init(spec, packet), p.time), spec);
}

void warn_packet(const RunParameters& p, std::ostream& log)
{
    if (!packet_fits_segment(EmbeddingSpec(p.nodes, 1, p.m), p.dx))
        log << "warning: m = " << p.m << " is below 4*dx = " << 4 * p.dx
            << "; the packet leaks out of its segment\n";
}

void cmd_run1d(const RunParameters& p, const fs::path& out, std::ostream& log)
{
    warn_packet(p, log);
    write_file_atomic(out / "dist.csv", distribution_csv(embedded_distribution(p, p.lambda)));
}

void cmd_sweep(const RunParameters& p, const fs::path& out, std::ostream& log)
{
    warn_packet(p, log);
    const TransitionRates rates = rates_for(p.order);
    const double t_free = equivalent_free_time(rates, p.time);
    std::string summary = "lambda,tv_distance_to_analytic,sigma\n";
    for (const int lambda : p.lambdas) {
        const NodeDistribution dist = embedded_distribution(p, lambda);
        const EmbeddingSpec spec(p.nodes, lambda, p.m);
        const NodeDistribution reference = analytic_node_distribution(spec, p.dx, t_free);
        write_file_atomic(out / ("dist_lambda" + std::to_string(lambda) + ".csv"), distribution_csv(dist));
        summary += std::to_string(lambda) + "," + format_double(total_variation(dist.probabilities,
                                                                                reference.probabilities))
                   + "," + format_double(spread_sigma(dist)) + "\n";
    }
    write_file_atomic(out / "summary.csv", summary);
}

void cmd_run2d(const RunParameters& p, const fs::path& out, std::ostream& log)
{
    warn_packet(p, log);
    const EmbeddingSpec spec(p.nodes, p.lambda, p.m);
    const auto n = static_cast<int>(spec.total_length());
    const SpectralKernel kx = build_kernel(rates_for(p.order), n, p.lambda);
    const SpectralKernel ky = build_kernel(rates_for(p.order_y), n, p.lambda);
    GaussianPacketSpec packet;
    packet.width = p.dx;
    const Grid2DState psi = evolve_fourier_2d(gaussian_init_2d(spec, spec, packet), kx, ky, p.time);
    const NodeDistribution2D dist = extract_nodes_2d(psi, spec, spec);

    std::string s = "i,j,probability\n";
    for (Eigen::Index i = 0; i < dist.labels_x.size(); ++i)
        for (Eigen::Index j = 0; j < dist.labels_y.size(); ++j)
            s += std::to_string(dist.labels_x[i]) + "," + std::to_string(dist.labels_y[j]) + ","
                 + format_double(dist.probabilities(i, j)) + "\n";
    write_file_atomic(out / "dist2d.csv", s);
}

void cmd_classical(const RunParameters& p, const fs::path& out, std::ostream&)
{
    const Boundary boundary = boundary_for(p.boundary);
    const int origin = origin_index(p.nodes);

    ProbabilityVector p0 = ProbabilityVector::Zero(p.nodes);
    p0[origin] = 1.0;
    const DenseOperator conservative = line_hamiltonian(p.nodes, p.gamma, LineConvention::Conservative, boundary);
    const ProbabilityVector classical = classical_evolve(conservative, p0, p.time);
    write_file_atomic(out / "classical.csv", distribution_csv(plain_node_distribution(classical)));

    // Quantum counterpart on the same line for the overlay.
    ComplexState psi0 = ComplexState::Zero(p.nodes);
    psi0[origin] = 1.0;
    const DenseOperator quantum = line_hamiltonian(p.nodes, p.gamma, LineConvention::Quantum, boundary);
    const ComplexState psi = evolve_direct(quantum, psi0, p.quantum_time);
    write_file_atomic(out / "quantum.csv", distribution_csv(plain_node_distribution(psi)));
}

void cmd_bench(const RunParameters& p, const fs::path& out, std::ostream& log)
{
    const std::vector<int> ns = parse_range(p.n_range);
    BenchOptions options;
    options.repeats = p.repeats;
    options.packet_width = p.dx;
    const BenchEngines engines = p.stub_engines ? constant_time_engines(std::chrono::microseconds(200))
                                                : spectral_vs_dense_engines(rates_for(p.order), p.time);
    const BenchReport report = benchmark_efficiency(ns, engines, options);

    std::string s = "n,t_direct_s,t_fourier_s,efficiency,max_abs_diff\n";
    for (const auto& r : report.records) {
        s += std::to_string(r.n) + "," + format_double(r.t_direct) + "," + format_double(r.t_fourier) + ","
             + format_double(r.efficiency) + "," + format_double(r.max_abs_diff) + "\n";
        log << "n=" << r.n << " efficiency=" << r.efficiency << " max_abs_diff=" << r.max_abs_diff << "\n";
    }
    write_file_atomic(out / "bench.csv", s);
    const json fit{{"c0", report.fit.c0}, {"c1", report.fit.c1}, {"c2", report.fit.c2},
                   {"residual", report.fit.residual}};
    write_file_atomic(out / "fit.json", fit.dump(2) + "\n");
}

} // namespace

void execute(const std::string& command, const RunParameters& params, const fs::path& out_dir, std::ostream& log)
{
    validate(command, params);
    fs::create_directories(out_dir);

    if (command == "run1d")
        cmd_run1d(params, out_dir, log);
    else if (command == "sweep")
        cmd_sweep(params, out_dir, log);
    else if (command == "run2d")
        cmd_run2d(params, out_dir, log);
    else if (command == "classical")
        cmd_classical(params, out_dir, log);
    else
        cmd_bench(params, out_dir, log);

    RunManifest manifest{command, params, kEngineVersion, utc_timestamp()};
    write_file_atomic(out_dir / "manifest.json", json(manifest).dump(2) + "\n");
}

namespace {

struct Flags {
    bool order = false, order_y = false, nodes = false, nodes_y = false, lambda = false, lambdas = false,
         m = false, dx = false, time = false, quantum_time = false, gamma = false, boundary = false,
         n_range = false, repeats = false, stub = false;
};

void add_flags(CLI::App* sub, RunParameters& p, const Flags& f)
{
    if (f.order)
        sub->add_option("--order", p.order, "stencil order (x axis in 2D)")
            ->check(CLI::IsMember({1, 10}))
            ->capture_default_str();
    if (f.order_y)
        sub->add_option("--order-y", p.order_y, "stencil order along y")
            ->check(CLI::IsMember({1, 10}))
            ->capture_default_str();
    if (f.nodes)
        sub->add_option("--nodes", p.nodes, "node count N")->capture_default_str();
    if (f.nodes_y)
        sub->add_option("--nodes-y", p.nodes_y, "node count along y (must equal --nodes)");
    if (f.lambda)
        sub->add_option("--lambda", p.lambda, "elements between node centers")->capture_default_str();
    if (f.lambdas)
        sub->add_option("--lambdas", p.lambdas, "comma-separated lambda list")->delimiter(',')->capture_default_str();
    if (f.m)
        sub->add_option("--m", p.m, "elements per segment")->capture_default_str();
    if (f.dx)
        sub->add_option("--dx", p.dx, "Gaussian width in elements")->capture_default_str();
    if (f.time)
        sub->add_option("--time", p.time, "evolution time")->capture_default_str();
    if (f.quantum_time)
        sub->add_option("--quantum-time", p.quantum_time, "evolution time of the quantum overlay")
            ->capture_default_str();
    if (f.gamma)
        sub->add_option("--gamma", p.gamma, "nearest-neighbour transition rate")->capture_default_str();
    if (f.boundary)
        sub->add_option("--boundary", p.boundary, "periodic or truncated")
            ->check(CLI::IsMember({"periodic", "truncated"}))
            ->capture_default_str();
    if (f.n_range)
        sub->add_option("--n", p.n_range, "problem sizes lo:hi:step")->capture_default_str();
    if (f.repeats)
        sub->add_option("--repeats", p.repeats, "timed repeats per size (>= 3)")->capture_default_str();
    if (f.stub)
        sub->add_flag("--stub-engines", p.stub_engines, "time constant-cost stand-ins (control run)");
    sub->add_option("--seed", p.seed, "seed for randomized runs");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Continuous-time quantum walk simulator", "qwalk"};
    app.require_subcommand(1);

    std::map<std::string, RunParameters> params;
    std::map<std::string, std::string> out_dirs;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"run1d", "evolve one embedded walk and write its node distribution"},
        {"sweep", "run the walk for a list of lambdas and compare with the free packet"},
        {"run2d", "evolve a separable walk on a square mesh"},
        {"classical", "classical master-equation walk plus its quantum counterpart"},
        {"bench", "time the dense and Fourier-shift engines"},
    };

    params["classical"].time = 25.0;
    params["bench"].time = 5.0;
    params["run2d"].nodes = 64;

    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        RunParameters& p = params[name];
        Flags f;
        f.time = f.boundary = true;
        if (name == "run1d" || name == "sweep" || name == "run2d")
            f.order = f.nodes = f.m = f.dx = true;
        if (name == "run1d" || name == "run2d")
            f.lambda = true;
        if (name == "sweep")
            f.lambdas = true;
        if (name == "run2d")
            f.order_y = f.nodes_y = true;
        if (name == "classical")
            f.nodes = f.gamma = f.quantum_time = true;
        if (name == "bench")
            f.order = f.dx = f.n_range = f.repeats = f.stub = true;
        add_flags(sub, p, f);
        out_dirs[name] = ".";
        sub->add_option("--out", out_dirs[name], "output directory")->capture_default_str();
    }

    std::string manifest_path;
    std::string replay_out = ".";
    CLI::App* replay = app.add_subcommand("replay", "re-run a command from its manifest.json");
    replay->add_option("manifest", manifest_path, "manifest file")->required();
    replay->add_option("--out", replay_out, "output directory")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return Ok;
        }
        err << "error: " << e.what() << "\n";
        return UsageError;
    }

    try {
        if (replay->parsed()) {
            std::ifstream is(manifest_path);
            if (!is)
                throw std::invalid_argument("cannot read manifest " + manifest_path);
            RunManifest manifest;
            try {
                manifest = json::parse(is).get<RunManifest>();
            } catch (const json::exception& e) {
                throw std::invalid_argument(std::string("malformed manifest: ") + e.what());
            }
            execute(manifest.command, manifest.parameters, replay_out, err);
            return Ok;
        }
        for (const auto& [name, help] : commands) {
            if (app.got_subcommand(name)) {
                execute(name, params[name], out_dirs[name], err);
                return Ok;
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return UsageError;
    } catch (const qwalk::Error& e) {
        err << "engine error: " << e.what() << "\n";
        return EngineError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EngineError;
    }
    return UsageError;
}

} // namespace qwalk::cli
