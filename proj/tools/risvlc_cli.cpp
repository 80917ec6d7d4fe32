// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------
//
// Command-line driver: simulate | optimize | noma | mimo | reproduce {blockage, orientation}

#include <risvlc/io.hpp>
#include <risvlc/mimo.hpp>
#include <risvlc/mirror_design.hpp>
#include <risvlc/noma.hpp>
#include <risvlc/parallel.hpp>
#include <risvlc/scenario.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace risvlc;
using nlohmann::json;

namespace
{
    struct Common
    {
        std::string scenario;
        std::uint64_t seed = 42;
        long trials = 0;
        std::string out;
        std::string format;
    };

    void add_common(CLI::App *cmd, Common &c, long default_trials, const std::string &default_format)
    {
        c.trials = default_trials;
        c.format = default_format;
        cmd->add_option("--scenario", c.scenario, "Scenario configuration (JSON)");
        cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
        cmd->add_option("--trials", c.trials, "Number of Monte-Carlo trials or samples")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out", c.out, "Output file (written atomically); stdout when omitted");
        cmd->add_option("--format", c.format, "Output format")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "json"}));
    }

    Scenario scenario_or(const Common &c, Scenario (*fallback)())
    {
        return c.scenario.empty() ? fallback() : load_scenario_file(c.scenario);
    }

    // Emit the document; with --out also print the one-line summary
    void emit(const Common &c, const std::string &document, const std::string &summary)
    {
        if (c.out.empty())
        {
            std::cout << document;
            return;
        }
        write_atomic(c.out, document);
        std::cout << summary << " -> " << c.out << "\n";
    }

    std::string dump(const json &j) { return j.dump(2) + "\n"; }

    json matrix_json(const MatX<double> &m, bool degrees)
    {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
        {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                row.push_back(degrees ? rad2deg(m(i, j)) : m(i, j));
            rows.push_back(row);
        }
        return rows;
    }

    MatX<double> matrix_from(const json &j, const char *name)
    {
        if (!j.is_array() || j.empty() || !j[0].is_array())
            throw ParseError(std::string("mimo: '") + name + "' must be a nonempty 2-D array");
        MatX<double> m(j.size(), j[0].size());
        for (std::size_t i = 0; i < j.size(); ++i)
        {
            if (j[i].size() != j[0].size())
                throw ParseError(std::string("mimo: '") + name + "' is ragged");
            for (std::size_t k = 0; k < j[i].size(); ++k)
            {
                if (!j[i][k].is_number())
                    throw ParseError(std::string("mimo: '") + name + "' must contain numbers");
                m(Eigen::Index(i), Eigen::Index(k)) = j[i][k].get<double>();
            }
        }
        return m;
    }

    int run_simulate(const Common &c, unsigned threads)
    {
        const Scenario s = load_scenario_file(c.scenario);
        std::vector<TrialResult> results(static_cast<std::size_t>(c.trials));
        parallel_for(
            results.size(), [&](std::size_t t) { results[t] = run_trial(s, trial_seed(c.seed, long(t))); }, threads);
        const auto stats = summarize(results, s.blockers.count);
        const std::string doc = c.format == "csv" ? trials_csv(results) : dump(to_json(stats));
        emit(c, doc, "simulate: " + std::to_string(c.trials) + " trials, mean sum rate " +
                         format_double(stats.mean_sum_rate) + " bit/s");
        return 0;
    }

    int run_optimize(const Common &c, const std::string &algo, const std::string &mode_name, long trial,
                     unsigned threads)
    {
        const Scenario s = scenario_or(c, blocked_los_benchmark);
        const Algorithm algorithm = parse_algorithm(algo);
        const AngleMode mode = parse_angle_mode(mode_name);
        const Realization r = realize(s, trial_seed(c.seed, trial));
        MirrorDesignOptions opts;
        opts.seed = c.seed;
        opts.threads = threads;
        const MirrorDesign d = optimize_mirror_angles(s, r, algorithm, mode, opts);
        const double baseline = random_angle_baseline(s, r, c.seed);
        const double walls = wall_only_rate(s, r);

        json panels = json::array();
        for (const auto &p : d.panels)
            panels.push_back({{"yaw_deg", matrix_json(p.yaw(), true)}, {"roll_deg", matrix_json(p.roll(), true)}});
        json doc = {
            {"algorithm", algo},
            {"mode", mode_name},
            {"seed", c.seed},
            {"achieved_sum_rate_bps", d.sum_rate},
            {"random_baseline_sum_rate_bps", baseline},
            {"wall_only_sum_rate_bps", walls},
            {"gain_over_wall_only", walls > 0 ? json(d.sum_rate / walls) : json(nullptr)},
            {"evaluations", d.search.evaluations_used},
            {"panels", panels},
        };
        std::string text;
        if (c.format == "csv")
        {
            text = "panel,row,col,yaw_deg,roll_deg\n";
            for (std::size_t k = 0; k < d.panels.size(); ++k)
                for (int i = 0; i < d.panels[k].rows(); ++i)
                    for (int j = 0; j < d.panels[k].cols(); ++j)
                        text += std::to_string(k) + ',' + std::to_string(i) + ',' + std::to_string(j) + ',' +
                                format_double(rad2deg(d.panels[k].yaw()(i, j))) + ',' +
                                format_double(rad2deg(d.panels[k].roll()(i, j))) + '\n';
        }
        else
            text = dump(doc);
        emit(c, text, "optimize: " + algo + "/" + mode_name + " sum rate " + format_double(d.sum_rate) +
                          " bit/s (random baseline " + format_double(baseline) + ")");
        return 0;
    }

    int run_noma(const Common &c, const std::vector<double> &gains, const std::vector<double> &coeffs, double power,
                 double noise_var, double residual)
    {
        const auto order = order_users(gains);
        std::vector<double> sorted;
        for (auto i : order)
            sorted.push_back(gains[i]);

        json doc = {{"order", order}, {"sorted_gains", sorted}, {"total_power_w", power}, {"noise_variance", noise_var}};
        std::vector<double> rates;
        std::vector<double> a = coeffs;
        if (a.empty())
        {
            if (sorted.size() != 2)
                throw ValidationError("noma: --coeffs is required unless exactly two gains are given");
            const auto sweep = best_two_user_allocation(sorted[0], sorted[1], power, noise_var);
            a = {sweep.a1, sweep.a2};
            doc["allocation_source"] = "sweep";
        }
        else
        {
            if (a.size() != sorted.size())
                throw ValidationError("noma: --coeffs must have one entry per gain");
            if (auto v = validate_allocation(a, sorted))
                throw ValidationError("noma: " + v->what);
            doc["allocation_source"] = "given";
        }
        rates = noma_rates(NomaAllocation{a, power, sorted}, noise_var, residual);
        double sum = 0.0;
        for (double r : rates)
            sum += r;
        const double tdma = tdma_sum_rate(sorted, power, noise_var);
        doc["coefficients"] = a;
        doc["rates_bits_per_use"] = rates;
        doc["noma_sum_rate"] = sum;
        doc["tdma_sum_rate"] = tdma;

        std::string text;
        if (c.format == "csv")
        {
            text = "rank,user,gain,coefficient,rate\n";
            for (std::size_t k = 0; k < rates.size(); ++k)
                text += std::to_string(k) + ',' + std::to_string(order[k]) + ',' + format_double(sorted[k]) + ',' +
                        format_double(a[k]) + ',' + format_double(rates[k]) + '\n';
        }
        else
            text = dump(doc);
        emit(c, text, "noma: sum rate " + format_double(sum) + " vs TDMA " + format_double(tdma) + " bit/use");
        return 0;
    }

    int run_mimo(const Common &c, const std::string &channel_path)
    {
        std::ifstream in(channel_path, std::ios::binary);
        if (!in)
            throw ParseError("mimo: cannot open '" + channel_path + "'");
        json j;
        try
        {
            j = json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw ParseError(std::string("mimo: ") + e.what());
        }
        for (const auto &[key, _] : j.items())
            if (key != "G" && key != "Phi" && key != "H" && key != "HH" && key != "peak_w" && key != "average_total_w" &&
                key != "noise_variance" && key != "overlap")
                throw ParseError("mimo: unknown key '" + key + "'");
        MatX<double> HH;
        if (j.contains("HH"))
            HH = matrix_from(j.at("HH"), "HH");
        else
        {
            if (!j.contains("G") || !j.contains("Phi") || !j.contains("H"))
                throw ParseError("mimo: provide either HH or all of G, Phi, H");
            const auto G = matrix_from(j.at("G"), "G");
            const auto H = matrix_from(j.at("H"), "H");
            std::vector<double> phi = j.at("Phi").get<std::vector<double>>();
            const VecX<double> phi_vec = Eigen::Map<const VecX<double>>(phi.data(), Eigen::Index(phi.size()));
            HH = assemble_channel<double>(G, phi_vec, H);
        }
        IntensityConstraints<double> cons;
        cons.peak = j.value("peak_w", 1.0);
        cons.average_total = j.value("average_total_w", double(HH.cols()));
        cons.validate();
        const double noise = j.value("noise_variance", 1.0);
        if (!(noise > 0))
            throw ValidationError("mimo: noise_variance must be positive");
        const bool overlap = j.value("overlap", true);
        const double cap = mimo_capacity<double>(HH, overlap, cons, noise);

        json doc = {{"channel", matrix_json(HH, false)},
                    {"overlap", overlap},
                    {"bound", overlap ? "qr" : "parallel"},
                    {"capacity_bits_per_use", cap}};
        const std::string text = c.format == "csv" ? "capacity_bits_per_use\n" + format_double(cap) + "\n" : dump(doc);
        emit(c, text, std::string("mimo: ") + (overlap ? "qr" : "parallel") + " capacity " + format_double(cap) +
                          " bit/use");
        return 0;
    }

    int run_blockage(const Common &c, const std::vector<int> &counts, unsigned threads)
    {
        const Scenario s = scenario_or(c, benchmark_scenario);
        const auto study = blockage_study(s, c.trials, counts, c.seed, threads);
        std::string text;
        if (c.format == "csv")
        {
            text = std::string("blockers,") + kTrialCsvHeader + "\n";
            for (std::size_t k = 0; k < counts.size(); ++k)
            {
                const std::string body = trials_csv(study.trials[k]);
                std::istringstream lines(body);
                std::string line;
                std::getline(lines, line); // header
                while (std::getline(lines, line))
                    text += std::to_string(counts[k]) + ',' + line + '\n';
            }
        }
        else
        {
            json j = json::array();
            for (const auto &st : study.per_count)
                j.push_back(to_json(st));
            text = dump({{"seed", c.seed}, {"studies", j}});
        }
        std::string summary = "reproduce blockage:";
        for (const auto &st : study.per_count)
            summary += " " + std::to_string(st.blocker_count) + " blockers -> " + format_double(st.mean_sum_rate) + " bit/s;";
        emit(c, text, summary);
        return 0;
    }

    int run_orientation(const Common &c, unsigned threads)
    {
        const Scenario s = scenario_or(c, benchmark_scenario);
        const auto st = orientation_study(s, c.trials, c.seed, threads);
        json doc = to_json(st);
        doc["seed"] = c.seed;
        const std::string text = c.format == "csv" ? "samples,los_visible,fov_excluded,fraction_excluded\n" +
                                                         std::to_string(st.samples) + ',' + std::to_string(st.visible) +
                                                         ',' + std::to_string(st.excluded) + ',' +
                                                         format_double(st.fraction_excluded) + '\n'
                                                   : dump(doc);
        emit(c, text, "reproduce orientation: fraction_excluded " + format_double(st.fraction_excluded));
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RIS-assisted indoor VLC simulator and optimizer"};
    app.require_subcommand(1);

    Common sim, opt, noma, mimo, block, orient;

    auto *simulate = app.add_subcommand("simulate", "Run Monte-Carlo trials of a scenario");
    add_common(simulate, sim, 100, "csv");
    simulate->get_option("--scenario")->required();

    auto *optimize = app.add_subcommand("optimize", "Optimize RIS mirror yaw/roll angles");
    add_common(optimize, opt, 1, "json");
    std::string algorithm = "sca", mode = "identical";
    long opt_trial = 0;
    optimize->add_option("--algorithm", algorithm, "Optimizer")
        ->capture_default_str()
        ->check(CLI::IsMember({"sca", "pso", "grid"}));
    optimize->add_option("--mode", mode, "Angle sharing")
        ->capture_default_str()
        ->check(CLI::IsMember({"identical", "per-element"}));
    optimize->add_option("--trial", opt_trial, "Trial index of the realization to optimize")->capture_default_str();

    auto *noma_cmd = app.add_subcommand("noma", "NOMA rates with SIC");
    add_common(noma_cmd, noma, 1, "json");
    std::vector<double> gains, coeffs;
    double power = 1.0, noise_var = 1e-12, residual = 0.0;
    noma_cmd->add_option("--gains", gains, "Channel gains, any order")->required()->delimiter(',');
    noma_cmd->add_option("--coeffs", coeffs, "Amplitude coefficients for the gains in ascending order")->delimiter(',');
    noma_cmd->add_option("--power", power, "Total electrical power P [W]")->capture_default_str();
    noma_cmd->add_option("--noise-var", noise_var, "Noise variance")->capture_default_str();
    noma_cmd->add_option("--sic-residual", residual, "Residual fraction of cancelled interference")
        ->capture_default_str();

    auto *mimo_cmd = app.add_subcommand("mimo", "Intensity-constrained RIS MIMO capacity");
    add_common(mimo_cmd, mimo, 1, "json");
    std::string channel_path;
    mimo_cmd->add_option("--channel", channel_path, "Channel description (JSON)")->required();

    auto *reproduce = app.add_subcommand("reproduce", "Reproduction drivers");
    reproduce->require_subcommand(1);
    auto *blockage = reproduce->add_subcommand("blockage", "Sum rate versus number of non-user blockers");
    add_common(blockage, block, 1000, "json");
    std::vector<int> counts{5, 15};
    blockage->add_option("--counts", counts, "Blocker counts")->delimiter(',')->capture_default_str();
    auto *orientation = reproduce->add_subcommand("orientation", "LoS users pushed outside the FoV by tilt");
    add_common(orientation, orient, 10000, "json");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    const unsigned threads = worker_threads();
    try
    {
        if (*simulate)
            return run_simulate(sim, threads);
        if (*optimize)
            return run_optimize(opt, algorithm, mode, opt_trial, threads);
        if (*noma_cmd)
            return run_noma(noma, gains, coeffs, power, noise_var, residual);
        if (*mimo_cmd)
            return run_mimo(mimo, channel_path);
        if (*blockage)
            return run_blockage(block, counts, threads);
        if (*orientation)
            return run_orientation(orient, threads);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
