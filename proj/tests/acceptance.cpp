// SPDX-License-Identifier: Apache-2.0
//
// Acceptance driver. `acceptance AC3` runs one criterion, no argument runs all.
// Each criterion prints one [PASS]/[FAIL] line with the measured quantities;
// the exit status is nonzero if any selected criterion fails.

#include "lobe_integral.hpp"

#include <risvlc/channel.hpp>
#include <risvlc/mimo.hpp>
#include <risvlc/mirror_design.hpp>
#include <risvlc/noma.hpp>
#include <risvlc/parallel.hpp>
#include <risvlc/scenario.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace risvlc;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    class Stopwatch
    {
    public:
        double seconds() const
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        }

    private:
        std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
    };

    std::string fmt(double v, int precision = 4)
    {
        std::ostringstream os;
        os.precision(precision);
        os << v;
        return os.str();
    }

    std::string runtime_note(double elapsed, double limit, bool &pass)
    {
        pass = pass && elapsed < limit;
        return " runtime=" + fmt(elapsed, 3) + "s (limit " + fmt(limit) + "s)";
    }

    Outcome ac1()
    {
        Stopwatch sw;
        const Scenario s = benchmark_scenario();
        const std::vector<int> counts{5, 15};
        const auto study = blockage_study(s, 1000, counts, 42, worker_threads());
        const auto &c5 = study.per_count[0];
        const auto &c15 = study.per_count[1];
        double los_sum = 0.0, nlos_sum = 0.0;
        long los_n = 0, nlos_n = 0;
        for (const auto &st : study.per_count)
        {
            los_sum += st.los_mean_rate * double(st.los_population);
            nlos_sum += st.nlos_mean_rate * double(st.nlos_population);
            los_n += st.los_population;
            nlos_n += st.nlos_population;
        }
        const double los_mean = los_n ? los_sum / double(los_n) : 0.0;
        const double nlos_mean = nlos_n ? nlos_sum / double(nlos_n) : 0.0;
        const bool ordering = c15.mean_sum_rate < c5.mean_sum_rate;
        const bool nlos_low = los_n > 0 && nlos_n > 0 && nlos_mean < 0.1 * los_mean;
        Outcome o;
        o.pass = ordering && nlos_low;
        o.detail = "mean(5)=" + fmt(c5.mean_sum_rate) + " mean(15)=" + fmt(c15.mean_sum_rate) +
                   " nlos_mean=" + fmt(nlos_mean) + " los_mean=" + fmt(los_mean) +
                   " nlos/los=" + fmt(los_mean > 0 ? nlos_mean / los_mean : 0.0) + " (need < 0.1)" +
                   " nlos_users=" + std::to_string(nlos_n) + " los_users=" + std::to_string(los_n);
        o.detail += runtime_note(sw.seconds(), 60, o.pass);
        return o;
    }

    Outcome ac2()
    {
        Stopwatch sw;
        const auto st = orientation_study(benchmark_scenario(), 10000, 42, worker_threads());
        Outcome o;
        o.pass = st.fraction_excluded >= 0.3 && st.fraction_excluded <= 0.7;
        o.detail = "fraction_excluded=" + fmt(st.fraction_excluded) + " (need [0.3, 0.7]) visible=" +
                   std::to_string(st.visible) + " excluded=" + std::to_string(st.excluded);
        o.detail += runtime_note(sw.seconds(), 10, o.pass);
        return o;
    }

    Outcome ac3()
    {
        Stopwatch sw;
        const Scenario s = blocked_los_benchmark();
        int beats = 0;
        double min_ratio = INFINITY, sum_ratio = 0.0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed)
        {
            const Realization r = realize(s, trial_seed(seed, 0));
            MirrorDesignOptions opts;
            opts.seed = seed;
            opts.threads = worker_threads();
            const auto d = optimize_mirror_angles(s, r, Algorithm::Sca, AngleMode::Identical, opts);
            const double random = random_angle_baseline(s, r, seed);
            const double walls = wall_only_rate(s, r);
            beats += d.sum_rate > random ? 1 : 0;
            const double ratio = walls > 0 ? d.sum_rate / walls : INFINITY;
            min_ratio = std::min(min_ratio, ratio);
            sum_ratio += ratio;
        }
        Outcome o;
        o.pass = beats == 10 && min_ratio >= 3.0;
        o.detail = "beats_random=" + std::to_string(beats) + "/10 min_ratio_over_walls=" + fmt(min_ratio) +
                   " mean_ratio=" + fmt(sum_ratio / 10) + " (need >= 3)";
        o.detail += runtime_note(sw.seconds(), 300, o.pass);
        return o;
    }

    Outcome ac4()
    {
        Stopwatch sw;
        const Scenario s = single_mirror_benchmark();
        int sca_ok = 0, pso_ok = 0;
        double worst = INFINITY;
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
        {
            const Realization r = realize(s, trial_seed(seed, 0));
            MirrorDesignOptions opts;
            opts.seed = seed;
            opts.threads = worker_threads();
            const double oracle = optimize_mirror_angles(s, r, Algorithm::Grid, AngleMode::Identical, opts).sum_rate;
            const double sca = optimize_mirror_angles(s, r, Algorithm::Sca, AngleMode::Identical, opts).sum_rate;
            const double pso = optimize_mirror_angles(s, r, Algorithm::Pso, AngleMode::Identical, opts).sum_rate;
            sca_ok += sca >= 0.98 * oracle ? 1 : 0;
            pso_ok += pso >= 0.98 * oracle ? 1 : 0;
            worst = std::min({worst, sca / oracle, pso / oracle});
        }
        Outcome o;
        o.pass = sca_ok == 5 && pso_ok == 5;
        o.detail = "sca=" + std::to_string(sca_ok) + "/5 pso=" + std::to_string(pso_ok) +
                   "/5 worst_fraction_of_grid=" + fmt(worst, 6);
        o.detail += runtime_note(sw.seconds(), 120, o.pass);
        return o;
    }

    Outcome ac5()
    {
        Stopwatch sw;
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> gain(1e-3, 2.0);
        std::uniform_int_distribution<int> size(1, 8);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t)
        {
            const int L = size(rng);
            VecX<double> d(L);
            for (int i = 0; i < L; ++i)
                d[i] = gain(rng);
            IntensityConstraints<double> c{1.0, double(L)};
            const double qr = qr_capacity<double>(MatX<double>(d.asDiagonal()), c, 0.01);
            const double par = parallel_capacity<double>(d, c, 0.01);
            worst = std::max(worst, std::abs(qr - par) / par);
        }
        MatX<double> HH(3, 3);
        HH << 0.9, 0.2, 0.1, 0.3, 0.8, 0.2, 0.1, 0.25, 0.7;
        bool monotone = true;
        double prev = -1.0;
        for (int i = 0; i < 20; ++i)
        {
            const double x = 0.1 + 0.1 * i;
            const double cap = qr_capacity<double>(HH, IntensityConstraints<double>{x, 1.5 * 2.0}, 0.01);
            monotone = monotone && cap > prev;
            prev = cap;
        }
        Outcome o;
        o.pass = worst <= 1e-12 && monotone;
        o.detail = "max_rel_err=" + fmt(worst, 3) + " (need <= 1e-12) monotone=" + (monotone ? "yes" : "no");
        o.detail += runtime_note(sw.seconds(), 5, o.pass);
        return o;
    }

    // Detector sphere below the LED: each tile holds a normal-facing detector whose
    // area is the tile area, so the summed LoS gains integrate the radiant pattern.
    double lambertian_sphere_integral(double m)
    {
        LedTx<double> tx;
        tx.position = Vec3d(0, 0, 0);
        tx.normal = Vec3d(0, 0, -1);
        tx.half_intensity_angle = std::acos(std::pow(2.0, -1.0 / m));
        const double R = 3.0;
        const int n_theta = 2000, n_phi = 16;
        const double dt = (pi_v<double> / 2) / n_theta, dp = 2 * pi_v<double> / n_phi;
        double total = 0.0;
        for (int i = 0; i < n_theta; ++i)
        {
            const double t = (i + 0.5) * dt;
            for (int j = 0; j < n_phi; ++j)
            {
                const double p = (j + 0.5) * dp;
                const Vec3d dir(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), -std::cos(t));
                PdRx<double> rx;
                rx.position = R * dir;
                rx.normal = -dir;
                rx.area = R * R * std::sin(t) * dt * dp;
                rx.fov = pi_v<double> / 2;
                rx.refractive_index = 1.0;
                total += los_gain<double>(tx, rx).h;
            }
        }
        return total;
    }

    Outcome ac6()
    {
        Stopwatch sw;
        Outcome o;
        o.pass = true;
        for (double m : {1.0, 2.0, 5.0})
        {
            const double v = lambertian_sphere_integral(m);
            o.pass = o.pass && std::abs(v - 1.0) <= 1e-3;
            o.detail += "m=" + fmt(m) + ":" + fmt(v, 8) + " ";
        }
        o.detail += "(need 1 +/- 1e-3)";
        o.detail += runtime_note(sw.seconds(), 5, o.pass);
        return o;
    }

    Outcome ac7()
    {
        Stopwatch sw;
        LedTx<double> tx;
        const MirrorElement<double> e{Vec3d(0.0, 2.0, 1.5), Vec3d(1, 0, 0)};
        Outcome o;
        o.pass = true;
        for (double deg : {1.0, 2.0, 5.0})
        {
            MirrorOptics<double> optics;
            optics.beam_spread = deg2rad(deg);
            const auto r = testing_support::integrate_reflected_lobe(tx, e, optics);
            const double ratio = r.reflected / r.incident;
            o.pass = o.pass && r.incident > 0 && ratio <= 1.01;
            o.detail += "sigma=" + fmt(deg) + "deg:reflected/incident=" + fmt(ratio, 6) + " ";
        }
        o.detail += "(need <= 1.01)";
        o.detail += runtime_note(sw.seconds(), 10, o.pass);
        return o;
    }

    Outcome ac8()
    {
        Stopwatch sw;
        const double noise = 1e-14;
        const std::vector<double> h{1e-6, 2.5e-6};
        Outcome o;

        // constraint: sum of squares must hold to 1e-9
        const double a1 = 0.9;
        const std::vector<double> ok{a1, std::sqrt(1 - a1 * a1) * (1 - 0.4e-9)};
        const std::vector<double> bad{a1, std::sqrt(1 - a1 * a1) * (1 - 1e-7)};
        const bool accepts = !validate_allocation(ok, h).has_value();
        bool rejects = validate_allocation(bad, h).has_value();
        try
        {
            noma_rates({bad, 1.0, h}, noise);
            rejects = false;
        }
        catch (const ValidationError &)
        {
        }

        // strongest user sees only noise after SIC
        const std::vector<double> a{std::sqrt(0.8), std::sqrt(0.2)};
        const auto rates = noma_rates({a, 1.0, h}, noise);
        const double alone = 0.5 * std::log2(1 + 0.2 * h[1] * h[1] / noise);
        const bool clean = std::abs(rates[1] - alone) <= 1e-12 * alone;

        const auto sweep = best_two_user_allocation(h[0], h[1], 1.0, noise);
        const double tdma = tdma_sum_rate(h, 1.0, noise);
        const bool beats = sweep.sum_rate > tdma;

        o.pass = accepts && rejects && clean && beats;
        o.detail = std::string("constraint_1e-9=") + (accepts && rejects ? "enforced" : "not enforced") +
                   " strongest_interference_free=" + (clean ? "yes" : "no") + " noma_sweep=" + fmt(sweep.sum_rate) +
                   " tdma=" + fmt(tdma) + " a1=" + fmt(sweep.a1);
        o.detail += runtime_note(sw.seconds(), 5, o.pass);
        return o;
    }

    std::string read_file(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    Outcome ac9()
    {
        Stopwatch sw;
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("risvlc_ac9_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::string cli = RISVLC_CLI_PATH;
        const std::string cfg = RISVLC_CONFIG_DIR;
        const std::vector<std::pair<std::string, std::string>> commands{
            {"simulate", "simulate --scenario " + cfg + "/benchmark.json --trials 40 --seed 7"},
            {"blockage", "reproduce blockage --trials 50 --seed 11"},
            {"orientation", "reproduce orientation --trials 4000 --seed 3"},
            {"optimize", "optimize --algorithm pso --mode per-element --seed 5"},
            {"optimize_json", "optimize --algorithm sca --seed 9 --format json"},
        };
        Outcome o;
        o.pass = true;
        int identical = 0;
        for (const auto &[name, args] : commands)
        {
            std::string out[2];
            const char *threads[2] = {"1", "4"};
            bool ran = true;
            for (int k = 0; k < 2; ++k)
            {
                const fs::path file = dir / (name + "_" + threads[k] + ".out");
                const std::string cmd = std::string("RIS_VLC_THREADS=") + threads[k] + " \"" + cli + "\" " + args +
                                        " --out \"" + file.string() + "\" > /dev/null";
                ran = ran && std::system(cmd.c_str()) == 0;
                out[k] = read_file(file);
            }
            const bool same = ran && !out[0].empty() && out[0] == out[1];
            identical += same ? 1 : 0;
            o.pass = o.pass && same;
            if (!same)
                o.detail += name + ":differs ";
        }
        fs::remove_all(dir);
        o.detail += "identical=" + std::to_string(identical) + "/" + std::to_string(commands.size()) +
                    " (threads 1 vs 4)";
        o.detail += runtime_note(sw.seconds(), 600, o.pass);
        return o;
    }
} // namespace

int main(int argc, char **argv)
{
    const std::map<std::string, std::function<Outcome()>> criteria{
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
    };
    std::vector<std::string> selected;
    for (int i = 1; i < argc; ++i)
        selected.emplace_back(argv[i]);
    if (selected.empty())
        for (const auto &[name, fn] : criteria)
            selected.push_back(name);

    int failures = 0;
    for (const auto &name : selected)
    {
        const auto it = criteria.find(name);
        if (it == criteria.end())
        {
            std::fprintf(stderr, "unknown criterion %s\n", name.c_str());
            return 2;
        }
        Outcome o;
        try
        {
            o = it->second();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
