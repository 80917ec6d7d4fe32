// SPDX-License-Identifier: Apache-2.0
//
// risvlc: RIS-assisted indoor visible light communication toolkit
// ------------------------------------------------------------------------

#include <risvlc/parallel.hpp>
#include <risvlc/random.hpp>
#include <risvlc/scenario.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace risvlc
{
    using nlohmann::json;

    namespace
    {
        // ---------------------------------------------------------------- parsing helpers

        void reject_unknown(const json &obj, const std::string &where, std::initializer_list<const char *> allowed)
        {
            if (!obj.is_object())
                throw ParseError(where + ": expected an object");
            std::set<std::string> ok(allowed.begin(), allowed.end());
            for (const auto &[key, _] : obj.items())
                if (!ok.count(key))
                    throw ParseError(where + ": unknown key '" + key + "'");
        }

        double number(const json &obj, const std::string &where, const char *key, double fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const auto &v = obj.at(key);
            if (!v.is_number())
                throw ParseError(where + "." + key + ": expected a number");
            return v.get<double>();
        }

        int integer(const json &obj, const std::string &where, const char *key, int fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const auto &v = obj.at(key);
            if (!v.is_number_integer())
                throw ParseError(where + "." + key + ": expected an integer");
            return v.get<int>();
        }

        bool boolean(const json &obj, const std::string &where, const char *key, bool fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const auto &v = obj.at(key);
            if (!v.is_boolean())
                throw ParseError(where + "." + key + ": expected true or false");
            return v.get<bool>();
        }

        std::vector<double> numbers(const json &v, const std::string &where)
        {
            if (!v.is_array())
                throw ParseError(where + ": expected an array of numbers");
            std::vector<double> out;
            for (const auto &x : v)
            {
                if (!x.is_number())
                    throw ParseError(where + ": expected an array of numbers");
                out.push_back(x.get<double>());
            }
            return out;
        }

        Vec3d vec3(const json &v, const std::string &where)
        {
            auto xs = numbers(v, where);
            if (xs.size() != 3)
                throw ParseError(where + ": expected [x, y, z]");
            return {xs[0], xs[1], xs[2]};
        }

        // [x, y] on the floor or a full [x, y, z]
        Vec3d point(const json &v, const std::string &where, double default_z)
        {
            auto xs = numbers(v, where);
            if (xs.size() == 2)
                return {xs[0], xs[1], default_z};
            if (xs.size() == 3)
                return {xs[0], xs[1], xs[2]};
            throw ParseError(where + ": expected [x, y] or [x, y, z]");
        }

        // Scalar (broadcast) or rows x cols nested array, in degrees
        MatX<double> angle_matrix(const json &obj, const std::string &where, const char *key, int rows, int cols)
        {
            MatX<double> m = MatX<double>::Zero(rows, cols);
            if (!obj.contains(key))
                return m;
            const auto &v = obj.at(key);
            const std::string path = where + "." + key;
            if (v.is_number())
                return MatX<double>::Constant(rows, cols, deg2rad(v.get<double>()));
            if (!v.is_array() || int(v.size()) != rows)
                throw ParseError(path + ": expected a number or a " + std::to_string(rows) + "x" +
                                 std::to_string(cols) + " array");
            for (int i = 0; i < rows; ++i)
            {
                auto row = numbers(v[std::size_t(i)], path);
                if (int(row.size()) != cols)
                    throw ParseError(path + ": row " + std::to_string(i) + " has the wrong length");
                for (int j = 0; j < cols; ++j)
                    m(i, j) = deg2rad(row[std::size_t(j)]);
            }
            return m;
        }

        std::string line_col(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return "line " + std::to_string(line) + ", column " + std::to_string(col);
        }

        void parse_room(const json &j, Scenario &s)
        {
            reject_unknown(j, "room", {"length", "width", "height"});
            s.room.length = number(j, "room", "length", 5.0);
            s.room.width = number(j, "room", "width", 5.0);
            s.room.height = number(j, "room", "height", 3.0);
        }

        LedTx<double> parse_ap(const json &j, const std::string &where, const Room<double> &room)
        {
            reject_unknown(j, where, {"position", "normal", "half_power_angle_deg", "optical_power_w"});
            LedTx<double> tx;
            tx.position = j.contains("position") ? vec3(j.at("position"), where + ".position")
                                                 : Vec3d(room.length / 2, room.width / 2, room.height);
            tx.normal = j.contains("normal") ? vec3(j.at("normal"), where + ".normal") : Vec3d(0, 0, -1);
            tx.half_intensity_angle = deg2rad(number(j, where, "half_power_angle_deg", 60.0));
            tx.optical_power = number(j, where, "optical_power_w", 2.0);
            return tx;
        }

        std::vector<UserSpec> parse_user(const json &j, const std::string &where)
        {
            reject_unknown(j, where,
                           {"count", "position", "orientation_deg", "height_m", "area_m2", "fov_deg", "filter_gain",
                            "refractive_index", "self_blockage", "lc"});
            UserSpec u;
            u.height = number(j, where, "height_m", 0.75);
            if (j.contains("position"))
                u.position = point(j.at("position"), where + ".position", u.height);
            if (j.contains("orientation_deg"))
            {
                auto o = numbers(j.at("orientation_deg"), where + ".orientation_deg");
                if (o.size() != 2)
                    throw ParseError(where + ".orientation_deg: expected [polar, azimuth]");
                u.orientation = DeviceOrientation<double>{deg2rad(o[0]), deg2rad(o[1])};
            }
            u.receiver.area = number(j, where, "area_m2", 1e-4);
            u.receiver.fov = deg2rad(number(j, where, "fov_deg", 85.0));
            u.receiver.filter_gain = number(j, where, "filter_gain", 1.0);
            u.receiver.refractive_index = number(j, where, "refractive_index", 1.5);
            u.self_blockage = boolean(j, where, "self_blockage", true);
            if (j.contains("lc"))
            {
                const auto &l = j.at("lc");
                const std::string lw = where + ".lc";
                reject_unknown(l, lw, {"transmittance", "amplification", "effective_fov_deg"});
                LcReceiverConfig<double> cfg;
                cfg.transmittance = number(l, lw, "transmittance", 1.0);
                cfg.amplification = number(l, lw, "amplification", 1.0);
                cfg.effective_fov = deg2rad(number(l, lw, "effective_fov_deg", 90.0));
                u.lc = cfg;
            }
            const int count = integer(j, where, "count", 1);
            if (count < 0)
                throw ParseError(where + ".count: must be >= 0");
            if (count > 1 && u.position)
                throw ParseError(where + ": a fixed position cannot be replicated with count > 1");
            return std::vector<UserSpec>(std::size_t(count), u);
        }

        void parse_blockers(const json &j, Scenario &s)
        {
            reject_unknown(j, "blockers", {"count", "radius_m", "height_m", "body_offset_m", "fixed"});
            s.blockers.count = integer(j, "blockers", "count", 0);
            s.blockers.radius = number(j, "blockers", "radius_m", 0.15);
            s.blockers.height = number(j, "blockers", "height_m", 1.65);
            s.blockers.body_offset = number(j, "blockers", "body_offset_m", 0.36);
            if (j.contains("fixed"))
            {
                const auto &f = j.at("fixed");
                if (!f.is_array())
                    throw ParseError("blockers.fixed: expected an array of [x, y] positions");
                for (std::size_t i = 0; i < f.size(); ++i)
                    s.blockers.fixed.push_back(point(f[i], "blockers.fixed[" + std::to_string(i) + "]", 0.0));
            }
        }

        MirrorArray<double> parse_ris(const json &j, const std::string &where)
        {
            reject_unknown(j, where,
                           {"center", "normal", "up", "rows", "cols", "element_size_m", "reflectivity",
                            "beam_spread_deg", "yaw_deg", "roll_deg"});
            if (!j.contains("center") || !j.contains("normal"))
                throw ParseError(where + ": 'center' and 'normal' are required");
            const int rows = integer(j, where, "rows", 4);
            const int cols = integer(j, where, "cols", 4);
            const double size = number(j, where, "element_size_m", 0.1);
            const Vec3d up = j.contains("up") ? vec3(j.at("up"), where + ".up") : Vec3d::UnitZ();
            const Vec3d normal = vec3(j.at("normal"), where + ".normal");
            if (normal.norm() == 0.0 || up.norm() == 0.0)
                throw ValidationError(where + ": normal and up must be nonzero");
            MirrorArray<double> a(vec3(j.at("center"), where + ".center"), normal, rows, cols, size, up);
            MirrorOptics<double> o;
            o.area = size * size;
            o.reflectivity = number(j, where, "reflectivity", 0.95);
            o.beam_spread = deg2rad(number(j, where, "beam_spread_deg", 2.0));
            a.set_optics(o);
            const auto yaw = angle_matrix(j, where, "yaw_deg", rows, cols);
            const auto roll = angle_matrix(j, where, "roll_deg", rows, cols);
            if ((yaw.array().abs() > pi_v<double> / 2 + 1e-12).any() ||
                (roll.array().abs() > pi_v<double> / 2 + 1e-12).any())
                throw ValidationError(where + ": yaw and roll must lie in [-90, 90] degrees");
            a.set_angles(yaw, roll);
            return a;
        }

        bool inside(const Room<double> &room, const Vec3d &p, double tol = 1e-9)
        {
            return p.x() >= -tol && p.x() <= room.length + tol && p.y() >= -tol && p.y() <= room.width + tol &&
                   p.z() >= -tol && p.z() <= room.height + tol;
        }

        std::string fmt_point(const Vec3d &p)
        {
            std::ostringstream os;
            os << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
            return os.str();
        }
    } // namespace

    // -------------------------------------------------------------------- validation

    void Scenario::validate() const
    {
        if (!(room.length > 0 && room.width > 0 && room.height > 0))
            throw ValidationError("room: all dimensions must be positive");
        for (std::size_t a = 0; a < aps.size(); ++a)
        {
            const auto &tx = aps[a];
            const std::string w = "aps[" + std::to_string(a) + "]";
            if (!inside(room, tx.position))
                throw ValidationError(w + ": position " + fmt_point(tx.position) + " lies outside the room");
            if (std::abs(tx.normal.norm() - 1.0) > 1e-9)
                throw ValidationError(w + ": normal must be a unit vector");
            if (!(tx.half_intensity_angle > 0 && tx.half_intensity_angle < pi_v<double> / 2))
                throw ValidationError(w + ": half-power angle must lie in (0, 90) degrees");
            if (!(tx.optical_power > 0))
                throw ValidationError(w + ": optical power must be positive");
        }
        for (std::size_t u = 0; u < users.size(); ++u)
        {
            const auto &us = users[u];
            const std::string w = "users[" + std::to_string(u) + "]";
            if (us.position && !inside(room, *us.position))
                throw ValidationError(w + ": position " + fmt_point(*us.position) + " lies outside the room");
            if (!(us.height >= 0 && us.height <= room.height))
                throw ValidationError(w + ": device height must lie inside the room");
            const auto &rx = us.receiver;
            if (!(rx.area > 0))
                throw ValidationError(w + ": detector area must be positive");
            if (!(rx.fov > 0 && rx.fov <= pi_v<double> / 2 + 1e-12))
                throw ValidationError(w + ": FoV must lie in (0, 90] degrees");
            if (!(rx.filter_gain > 0 && rx.filter_gain <= 1))
                throw ValidationError(w + ": filter gain must lie in (0, 1]");
            if (!(rx.refractive_index >= 1))
                throw ValidationError(w + ": refractive index must be >= 1");
            if (us.orientation)
            {
                const auto &o = *us.orientation;
                if (!(o.polar >= 0 && o.polar <= pi_v<double> / 2 + 1e-12) ||
                    !(o.azimuth >= -pi_v<double> - 1e-12 && o.azimuth <= pi_v<double> + 1e-12))
                    throw ValidationError(w + ": orientation must satisfy 0 <= polar <= 90, -180 <= azimuth <= 180");
            }
            if (us.lc)
                us.lc->validate();
        }
        if (blockers.count < 0)
            throw ValidationError("blockers: count must be >= 0");
        if (!(blockers.radius > 0 && blockers.height > 0))
            throw ValidationError("blockers: radius and height must be positive");
        if (!(blockers.body_offset >= 0))
            throw ValidationError("blockers: body offset must be >= 0");
        const double margin = blockers.radius;
        if (2 * margin >= std::min(room.length, room.width))
            throw ValidationError("blockers: radius too large for the room");
        for (std::size_t b = 0; b < blockers.fixed.size(); ++b)
            if (!inside(room, blockers.fixed[b]))
                throw ValidationError("blockers.fixed[" + std::to_string(b) + "]: lies outside the room");
        for (std::size_t k = 0; k < ris.size(); ++k)
            if (!inside(room, ris[k].panel_center()))
                throw ValidationError("ris[" + std::to_string(k) + "]: panel center lies outside the room");
        if (!(walls.reflectance >= 0 && walls.reflectance <= 1))
            throw ValidationError("walls: reflectance must lie in [0, 1]");
        if (!(walls.patch_size > 0))
            throw ValidationError("walls: patch size must be positive");
        noise.validate();
        constraints.validate();
        orientation.validate();
    }

    Scenario load_scenario(std::string_view text)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw ParseError("scenario: syntax error at " + line_col(text, e.byte) + ": " + e.what());
        }
        reject_unknown(doc, "scenario",
                       {"room", "aps", "users", "blockers", "ris", "walls", "noise", "constraints", "orientation"});

        Scenario s;
        if (doc.contains("room"))
            parse_room(doc.at("room"), s);

        if (doc.contains("aps"))
        {
            const auto &aps = doc.at("aps");
            if (!aps.is_array())
                throw ParseError("aps: expected an array");
            for (std::size_t i = 0; i < aps.size(); ++i)
                s.aps.push_back(parse_ap(aps[i], "aps[" + std::to_string(i) + "]", s.room));
        }
        else
            s.aps.push_back(parse_ap(json::object(), "aps[0]", s.room));

        if (doc.contains("users"))
        {
            const auto &us = doc.at("users");
            if (!us.is_array())
                throw ParseError("users: expected an array");
            for (std::size_t i = 0; i < us.size(); ++i)
                for (auto &u : parse_user(us[i], "users[" + std::to_string(i) + "]"))
                    s.users.push_back(std::move(u));
        }

        if (doc.contains("blockers"))
            parse_blockers(doc.at("blockers"), s);

        if (doc.contains("ris"))
        {
            const auto &r = doc.at("ris");
            if (!r.is_array())
                throw ParseError("ris: expected an array");
            for (std::size_t i = 0; i < r.size(); ++i)
                s.ris.push_back(parse_ris(r[i], "ris[" + std::to_string(i) + "]"));
        }

        if (doc.contains("walls"))
        {
            const auto &w = doc.at("walls");
            reject_unknown(w, "walls", {"enabled", "reflectance", "patch_size_m"});
            s.walls.enabled = boolean(w, "walls", "enabled", true);
            s.walls.reflectance = number(w, "walls", "reflectance", 0.8);
            s.walls.patch_size = number(w, "walls", "patch_size_m", 0.05);
        }

        if (doc.contains("noise"))
        {
            const auto &n = doc.at("noise");
            reject_unknown(n, "noise", {"psd_a2_per_hz", "bandwidth_hz"});
            s.noise.psd = number(n, "noise", "psd_a2_per_hz", 1e-21);
            s.noise.bandwidth = number(n, "noise", "bandwidth_hz", 20e6);
        }

        if (doc.contains("constraints"))
        {
            const auto &c = doc.at("constraints");
            reject_unknown(c, "constraints", {"peak_w", "average_total_w"});
            s.constraints.peak = number(c, "constraints", "peak_w", 2.0);
            s.constraints.average_total = number(c, "constraints", "average_total_w", 2.0);
        }

        if (doc.contains("orientation"))
        {
            const auto &o = doc.at("orientation");
            reject_unknown(o, "orientation", {"mean_polar_deg", "std_polar_deg"});
            s.orientation.mean_polar = deg2rad(number(o, "orientation", "mean_polar_deg", 41.0));
            s.orientation.std_polar = deg2rad(number(o, "orientation", "std_polar_deg", 9.0));
        }

        s.validate();
        return s;
    }

    Scenario load_scenario_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ParseError("scenario: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return load_scenario(ss.str());
    }

    // -------------------------------------------------------------------- built-in scenarios

    Scenario benchmark_scenario()
    {
        Scenario s;
        s.aps.push_back(LedTx<double>{});
        s.users.assign(4, UserSpec{});
        s.blockers.count = 5;
        s.validate();
        return s;
    }

    namespace
    {
        // User near the y = 0 wall whose LoS to the ceiling AP is cut by a fixed blocker,
        // with a mirror panel on that wall above the user.
        Scenario blocked_los_base(int rows, int cols)
        {
            Scenario s;
            s.aps.push_back(LedTx<double>{});
            UserSpec u;
            u.position = Vec3d(1.5, 1.0, 0.75);
            u.orientation = DeviceOrientation<double>{0.0, 0.0};
            u.self_blockage = false;
            s.users.push_back(u);
            s.blockers.fixed.push_back(Vec3d(1.75, 1.375, 0.0));
            MirrorArray<double> panel(Vec3d(1.5, 0.0, 1.8), Vec3d(0, 1, 0), rows, cols, 0.1);
            s.ris.push_back(panel);
            s.validate();
            return s;
        }
    } // namespace

    Scenario blocked_los_benchmark() { return blocked_los_base(4, 4); }

    Scenario single_mirror_benchmark() { return blocked_los_base(1, 1); }

    // -------------------------------------------------------------------- realization

    std::uint64_t trial_seed(std::uint64_t master_seed, long trial)
    {
        return derive_seed(master_seed, {std::uint64_t(trial)});
    }

    namespace
    {
        enum Stream : std::uint64_t
        {
            kUserStream = 1,
            kBlockerStream = 2,
        };
    } // namespace

    Realization realize(const Scenario &s, std::uint64_t seed)
    {
        Realization r;
        const double margin = s.blockers.radius;
        const double x_hi = s.room.length - margin, y_hi = s.room.width - margin;
        auto in_floor = [&](double x, double y) { return x >= margin && x <= x_hi && y >= margin && y <= y_hi; };

        std::vector<CylinderBlocker<double>> bodies;
        for (std::size_t u = 0; u < s.users.size(); ++u)
        {
            const auto &us = s.users[u];
            Rng rng(derive_seed(seed, {kUserStream, u}));
            DeviceOrientation<double> o = us.orientation ? *us.orientation : sample_orientation(s.orientation, rng);

            // The screen tilts toward the holder, so the body sits on the side the
            // detector normal leans to.
            const Vec3d body_dir(std::cos(o.azimuth), std::sin(o.azimuth), 0.0);
            const double off = s.blockers.body_offset;
            Vec3d pos;
            if (us.position)
                pos = *us.position;
            else
            {
                // Reject until the device and (if attached) its body fit inside the margin
                for (;;)
                {
                    pos = Vec3d(rng.uniform(margin, x_hi), rng.uniform(margin, y_hi), us.height);
                    if (!us.self_blockage ||
                        in_floor(pos.x() + off * body_dir.x(), pos.y() + off * body_dir.y()))
                        break;
                }
            }
            PdRx<double> rx = us.receiver;
            rx.position = pos;
            rx.normal = device_normal(o);
            r.receivers.push_back(rx);
            r.orientations.push_back(o);
            r.lc.push_back(us.lc);
            if (us.self_blockage)
                bodies.push_back({Vec3d(pos.x() + off * body_dir.x(), pos.y() + off * body_dir.y(), 0.0),
                                  s.blockers.radius, s.blockers.height});
        }

        r.blockers = bodies;
        for (const auto &f : s.blockers.fixed)
            r.blockers.push_back({f, s.blockers.radius, s.blockers.height});
        for (int b = 0; b < s.blockers.count; ++b)
        {
            Rng rng(derive_seed(seed, {kBlockerStream, std::uint64_t(b)}));
            r.blockers.push_back({Vec3d(rng.uniform(margin, x_hi), rng.uniform(margin, y_hi), 0.0),
                                  s.blockers.radius, s.blockers.height});
        }
        return r;
    }

    // -------------------------------------------------------------------- link budget

    PdRx<double> LinkBudget::effective_receiver(std::size_t u) const
    {
        PdRx<double> rx = r_.receivers[u];
        if (r_.lc[u])
            rx.fov = r_.lc[u]->effective_fov;
        return rx;
    }

    double LinkBudget::lc_scale(std::size_t u, double incidence) const
    {
        if (!r_.lc[u])
            return 1.0;
        return apply_lc_receiver_gain(ChannelGain<double>{1.0, PathKind::LoS}, *r_.lc[u], incidence).h;
    }

    LinkBudget::LinkBudget(const Scenario &s, Realization r) : s_(&s), r_(std::move(r))
    {
        const std::span<const CylinderBlocker<double>> blockers(r_.blockers);
        const std::size_t U = r_.receivers.size(), A = s.aps.size();
        links_.assign(U, std::vector<Link>(A));

        std::vector<WallPatch<double>> patches;
        if (s.walls.enabled && s.walls.reflectance > 0)
            patches = discretize_walls(s.room, s.walls.patch_size, s.walls.reflectance);

        for (std::size_t a = 0; a < A; ++a)
        {
            const auto &tx = s.aps[a];
            WallIllumination<double> ill;
            if (!patches.empty())
                ill = illuminate_walls<double>(tx, patches, blockers);
            for (std::size_t u = 0; u < U; ++u)
            {
                auto &l = links_[u][a];
                const PdRx<double> rx = effective_receiver(u);
                const Vec3d to_tx = (tx.position - rx.position).normalized();
                const double c = std::clamp(rx.normal.dot(to_tx), -1.0, 1.0);
                l.incidence = std::acos(c);
                l.fov_ok = c >= 0.0 && c >= std::cos(r_.receivers[u].fov);
                l.visible = los_visible<double>(tx.position, rx.position, blockers);
                l.los = los_gain<double>(tx, rx, blockers).h * lc_scale(u, l.incidence);
                if (!patches.empty())
                    l.wall = collect_wall_gain<double>(ill, patches, rx, blockers).h * lc_scale(u, 0.0);
            }
        }
    }

    TrialResult LinkBudget::evaluate(std::span<const MirrorArray<double>> ris) const
    {
        const std::span<const CylinderBlocker<double>> blockers(r_.blockers);
        const std::size_t U = links_.size(), A = s_->aps.size();
        TrialResult out;
        out.users.resize(U);
        std::vector<int> load(A, 0);
        for (std::size_t u = 0; u < U; ++u)
        {
            const PdRx<double> rx = effective_receiver(u);
            UserOutcome best;
            double best_total = -1.0;
            for (std::size_t a = 0; a < A; ++a)
            {
                UserOutcome o;
                o.h_los = links_[u][a].los;
                o.h_wall = links_[u][a].wall;
                for (const auto &panel : ris)
                    o.h_ris += array_gain<double>(s_->aps[a], panel, rx, blockers).h;
                o.h_ris *= lc_scale(u, 0.0);
                o.los_visible = links_[u][a].visible;
                o.fov_ok = links_[u][a].fov_ok;
                o.serving_ap = int(a);
                if (o.h_total() > best_total)
                {
                    best_total = o.h_total();
                    best = o;
                }
            }
            out.users[u] = best;
            if (A > 0)
                ++load[std::size_t(best.serving_ap)];
        }
        for (auto &o : out.users)
        {
            const double share = 1.0 / double(std::max(1, load[std::size_t(o.serving_ap)]));
            o.rate_bps = share * link_rate(o.h_total(), s_->constraints, s_->noise);
            out.sum_rate += o.rate_bps;
        }
        return out;
    }

    double LinkBudget::sum_rate(std::span<const MirrorArray<double>> ris) const { return evaluate(ris).sum_rate; }

    double sum_rate(const Scenario &s, const Realization &r, std::span<const MirrorArray<double>> ris)
    {
        return LinkBudget(s, r).sum_rate(ris);
    }

    TrialResult run_trial(const Scenario &s, std::uint64_t seed)
    {
        return LinkBudget(s, realize(s, seed)).evaluate(s.ris);
    }

    // -------------------------------------------------------------------- studies

    StudyStatistics summarize(const std::vector<TrialResult> &trials, int blocker_count)
    {
        StudyStatistics st;
        st.blocker_count = blocker_count;
        st.trials = long(trials.size());
        double sum = 0.0, sum_sq = 0.0, los_sum = 0.0, nlos_sum = 0.0;
        long visible = 0, excluded = 0;
        for (const auto &t : trials)
        {
            sum += t.sum_rate;
            sum_sq += t.sum_rate * t.sum_rate;
            for (const auto &u : t.users)
            {
                ++st.user_samples;
                if (u.los_visible)
                {
                    ++visible;
                    if (!u.fov_ok)
                        ++excluded;
                }
                if (u.h_los > 0.0)
                {
                    ++st.los_population;
                    los_sum += u.rate_bps;
                }
                else
                {
                    ++st.nlos_population;
                    nlos_sum += u.rate_bps;
                }
            }
        }
        if (st.trials > 0)
        {
            st.mean_sum_rate = sum / double(st.trials);
            const double var = sum_sq / double(st.trials) - st.mean_sum_rate * st.mean_sum_rate;
            st.std_sum_rate = std::sqrt(std::max(0.0, var));
        }
        if (st.user_samples > 0)
            st.fraction_los_visible = double(visible) / double(st.user_samples);
        if (visible > 0)
            st.fraction_visible_fov_excluded = double(excluded) / double(visible);
        if (st.los_population > 0)
            st.los_mean_rate = los_sum / double(st.los_population);
        if (st.nlos_population > 0)
            st.nlos_mean_rate = nlos_sum / double(st.nlos_population);
        return st;
    }

    BlockageStudy blockage_study(const Scenario &s, long trials, std::span<const int> blocker_counts,
                                 std::uint64_t master_seed, unsigned threads)
    {
        if (trials < 1)
            throw ValidationError("blockage_study: trials must be >= 1");
        BlockageStudy study;
        for (int count : blocker_counts)
        {
            Scenario sc = s;
            sc.blockers.count = count;
            sc.validate();
            std::vector<TrialResult> results(static_cast<std::size_t>(trials));
            parallel_for(
                results.size(), [&](std::size_t t) { results[t] = run_trial(sc, trial_seed(master_seed, long(t))); },
                threads);
            study.per_count.push_back(summarize(results, count));
            study.trials.push_back(std::move(results));
        }
        return study;
    }

    OrientationStudy orientation_study(const Scenario &s, long samples, std::uint64_t master_seed, unsigned threads)
    {
        if (samples < 1)
            throw ValidationError("orientation_study: samples must be >= 1");
        if (s.users.empty() || s.aps.empty())
            throw ValidationError("orientation_study: scenario needs at least one user and one AP");
        const long per_trial = long(s.users.size() * s.aps.size());
        const long n_trials = (samples + per_trial - 1) / per_trial;

        struct Tally
        {
            long samples = 0, visible = 0, excluded = 0;
        };
        std::vector<Tally> tallies(static_cast<std::size_t>(n_trials));
        parallel_for(
            tallies.size(),
            [&](std::size_t t) {
                const Realization r = realize(s, trial_seed(master_seed, long(t)));
                const std::span<const CylinderBlocker<double>> blockers(r.blockers);
                auto &tl = tallies[t];
                long budget = std::min(per_trial, samples - long(t) * per_trial);
                for (std::size_t u = 0; u < r.receivers.size() && budget > 0; ++u)
                    for (std::size_t a = 0; a < s.aps.size() && budget > 0; ++a, --budget)
                    {
                        const auto &rx = r.receivers[u];
                        ++tl.samples;
                        if (!los_visible<double>(s.aps[a].position, rx.position, blockers))
                            continue;
                        ++tl.visible;
                        const double c = incidence_cosine<double>(s.aps[a].position, rx.position, r.orientations[u]);
                        if (!(c >= 0.0 && c >= std::cos(rx.fov)))
                            ++tl.excluded;
                    }
            },
            threads);

        OrientationStudy out;
        for (const auto &t : tallies)
        {
            out.samples += t.samples;
            out.visible += t.visible;
            out.excluded += t.excluded;
        }
        if (out.visible > 0)
            out.fraction_excluded = double(out.excluded) / double(out.visible);
        return out;
    }

} // namespace risvlc
