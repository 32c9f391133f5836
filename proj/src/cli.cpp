#include "sphcap/cli.hpp"

#include "sphcap/error.hpp"
#include "sphcap/io.hpp"
#include "sphcap/parallel.hpp"
#include "sphcap/profile.hpp"
#include "sphcap/rearrangement.hpp"
#include "sphcap/shapes.hpp"
#include "sphcap/svg.hpp"
#include "sphcap/verify.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace sphcap {

namespace {

    struct InputOptions {
        std::string input;
        std::string preset;
        std::string profile;
        bool recenter = false;
        std::optional<int> n;
        std::map<std::string, double> params;
        std::string window;
        int samples = kDefaultSamplesPerSegment;
    };

    struct Source {
        std::string name;
        std::optional<MultiPolygon> poly;
        std::optional<RadialProfile> profile;
    };

    const std::vector<std::pair<std::string, std::string>> kShapeFlags{
        {"--radius", "radius"},           {"--center-x", "center_x"},     {"--center-y", "center_y"},
        {"--distance", "distance"},       {"--angle-offset", "angle_offset"}, {"--ball-radius", "ball_radius"},
        {"--len-long", "len_long"},       {"--len-short", "len_short"},   {"--width-long", "width_long"},
    };

    void add_input(CLI::App* cmd, InputOptions& opt, bool allow_profile, bool with_window)
    {
        auto* in = cmd->add_option("--input,-i", opt.input, "polygon JSON file");
        auto* pre = cmd->add_option("--preset,-p", opt.preset, "shape preset")
                        ->check(CLI::IsMember(preset_names()));
        in->excludes(pre);
        if (allow_profile) {
            auto* prof = cmd->add_option("--profile", opt.profile, "profile CSV (r,v rows, optional jump rows)");
            prof->excludes(in)->excludes(pre);
        }
        cmd->add_option("--n", opt.n, "vertex count for preset curves")->check(CLI::PositiveNumber);
        for (const auto& [flag, key] : kShapeFlags) {
            cmd->add_option_function<double>(
                flag, [&opt, key = key](double v) { opt.params[key] = v; }, "preset parameter " + key);
        }
        cmd->add_flag("--recenter", opt.recenter, "translate the set so its barycenter is the origin");
        if (with_window) {
            cmd->add_option("--window,-w", opt.window, "radial window lo:hi ('inf' allowed for hi)");
            cmd->add_option("--samples,-s", opt.samples, "samples per radial segment")
                ->check(CLI::Range(kMinSamplesPerSegment, 1 << 20));
        }
    }

    Source load_source(const InputOptions& opt, bool allow_profile)
    {
        Source src;
        if (!opt.profile.empty()) {
            src.name = opt.profile;
            src.profile = load_profile_file(opt.profile);
            return src;
        }
        if (!opt.input.empty()) {
            src.name = opt.input;
            src.poly = load_polygon_file(opt.input);
        } else if (!opt.preset.empty()) {
            ShapeSpec spec = default_spec(opt.preset);
            for (const auto& [k, v] : opt.params) {
                if (!spec.parameters.count(k))
                    throw Error(ErrorKind::InvalidParameter, "preset '" + opt.preset + "' has no parameter " + k);
                spec.parameters[k] = v;
            }
            if (opt.n)
                spec.resolution = *opt.n;
            src.name = "preset:" + opt.preset;
            src.poly = generate(spec);
        } else {
            throw Error(ErrorKind::MalformedInput,
                        allow_profile ? "give one of --input, --preset or --profile" : "give one of --input or --preset");
        }
        if (opt.recenter)
            src.poly = validate(recenter(*src.poly, barycenter(*src.poly)));
        return src;
    }

    AnnulusWindow parse_window(const std::string& text, double support_radius)
    {
        if (text.empty())
            return {0.0, 1.05 * support_radius};
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorKind::MalformedInput, "window must look like lo:hi");
        auto parse = [&](const std::string& s) {
            if (s == "inf")
                return std::numeric_limits<double>::infinity();
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != s.size() || s.empty())
                throw Error(ErrorKind::MalformedInput, "bad window bound '" + s + "'");
            return v;
        };
        return {parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
    }

    std::string fmt(double v)
    {
        std::ostringstream s;
        s << std::setprecision(9) << v;
        return s.str();
    }

    void emit(const std::string& path, const std::string& content, std::ostream& out)
    {
        if (path.empty() || path == "-")
            out << content;
        else
            write_file_atomic(path, content);
    }

    int cmd_slice(const InputOptions& opt, double r, std::ostream& out)
    {
        if (!(r > 0.0) || !std::isfinite(r))
            throw Error(ErrorKind::InvalidParameter, "--r must be a positive radius");
        const Source src = load_source(opt, false);
        const ArcSet arcs = circle_slice(*src.poly, r);
        nlohmann::json j{{"radius", sig9(r)},
                         {"kind", arcs.kind == SliceKind::Full    ? "full"
                                  : arcs.kind == SliceKind::Empty ? "empty"
                                                                  : "partial"},
                         {"v", sig9(arcs.kind == SliceKind::Full ? kTwoPi * r : arcs.length())},
                         {"arc_count", arcs.arc_count()}};
        nlohmann::json ivs = nlohmann::json::array();
        for (const auto& iv : arcs.intervals)
            ivs.push_back({sig9(iv.start), sig9(iv.end)});
        j["intervals"] = ivs;
        const SliceStats st = slice_stats(*src.poly, r);
        j["p"] = st.p;
        j["g"] = sig9(st.g);
        out << j.dump(2) << '\n';
        return kExitOk;
    }

    int cmd_profile(const InputOptions& opt, const std::string& csv, std::ostream& out)
    {
        const Source src = load_source(opt, false);
        const RadialProfile prof = build_profile(*src.poly, opt.samples);
        std::ostringstream s;
        write_profile_csv(prof, s);
        emit(csv, s.str(), out);
        return kExitOk;
    }

    int cmd_rearrange(const InputOptions& opt, const std::string& polygon_out, int steps, std::ostream& out)
    {
        const Source src = load_source(opt, true);
        const RadialProfile prof = src.profile ? *src.profile : build_profile(*src.poly, opt.samples);
        const RearrangedSet rset = rearrange(prof);
        const AnnulusWindow window = parse_window(opt.window, prof.r_max());
        out << "source " << src.name << '\n';
        out << "window " << fmt(window.lo()) << ':' << fmt(window.hi()) << '\n';
        out << "perimeter_rearranged " << fmt(perimeter_rearranged(rset, window)) << '\n';
        out << "tv_4r_dtheta " << fmt(tv_4r_dtheta(prof, window)) << '\n';
        out << "gamma_measure " << fmt(gamma_measure(prof, window).measure) << '\n';
        out << "area " << fmt(cumulative_area(prof, prof.r_max())) << '\n';
        if (!polygon_out.empty())
            write_file_atomic(polygon_out, polygon_to_json(rasterize(rset, steps)).dump() + "\n");
        return kExitOk;
    }

    int cmd_verify(const InputOptions& opt, const std::string& json_path, std::ostream& out)
    {
        const Source src = load_source(opt, false);
        const AnnulusWindow window = parse_window(opt.window, src.poly->scale());
        const VerificationReport rep = verify_main_theorem(*src.poly, window, opt.samples);
        out << "source " << src.name << '\n';
        out << "P_E " << fmt(rep.P_E) << '\n';
        out << "P_Fv " << fmt(rep.P_Fv) << '\n';
        out << "gamma_measure " << fmt(rep.gamma_measure) << '\n';
        out << "slack_main " << fmt(rep.slack_main) << '\n';
        for (const auto& c : rep.checks)
            out << to_string(c.status) << ' ' << c.name << ": " << c.detail << '\n';
        if (!json_path.empty())
            write_file_atomic(json_path, report_to_json(rep, src.name, opt.samples).dump(2) + "\n");
        return rep.has_violation() ? kExitViolation : kExitOk;
    }

    int cmd_shape(const InputOptions& opt, const std::string& path, std::ostream& out)
    {
        const Source src = load_source(opt, false);
        emit(path, polygon_to_json(*src.poly).dump() + "\n", out);
        return kExitOk;
    }

    int cmd_render(const InputOptions& opt, const std::string& path, int steps)
    {
        const Source src = load_source(opt, false);
        const RearrangedSet rset = rearrange(build_profile(*src.poly, opt.samples));
        render(*src.poly, rasterize(rset, steps), path);
        return kExitOk;
    }

    int cmd_highdim(int N, double alpha, std::ostream& out)
    {
        const HighDimResult res = highdim_counterexample(N, alpha);
        out << "lateral_E = " << fmt(res.lateral_E) << '\n';
        out << "lateral_F = " << fmt(res.lateral_F) << '\n';
        out << "increased = " << (res.increased ? "true" : "false") << '\n';
        return kExitOk;
    }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Double spherical cap rearrangement of planar polygons"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: SPHCAP_THREADS or hardware)");

    InputOptions opt;
    double slice_r = 0.0;
    std::string path;
    int steps = kDefaultAngularSteps;
    int N = 3;
    double alpha = 2.0;

    auto* slice = app.add_subcommand("slice", "arcs of the set on one circle");
    add_input(slice, opt, false, false);
    slice->add_option("--r", slice_r, "circle radius")->required();

    auto* profile = app.add_subcommand("profile", "dump the radial profile as CSV");
    add_input(profile, opt, false, true);
    profile->add_option("--csv,-o", path, "output CSV (stdout when omitted)");

    auto* rearr = app.add_subcommand("rearrange", "perimeter of the rearranged set");
    add_input(rearr, opt, true, true);
    rearr->add_option("--out,-o", path, "write the rasterized rearrangement as polygon JSON");
    rearr->add_option("--angular-steps", steps, "vertices per full turn on jump arcs")->check(CLI::Range(4, 1 << 20));

    auto* verify = app.add_subcommand("verify", "check the perimeter inequalities");
    add_input(verify, opt, false, true);
    verify->add_option("--json,-o", path, "write the report as JSON");

    auto* shape = app.add_subcommand("shape", "emit a preset polygon as JSON");
    add_input(shape, opt, false, false);
    shape->add_option("--out,-o", path, "output file (stdout when omitted)");

    auto* rend = app.add_subcommand("render", "SVG of the set next to its rearrangement");
    add_input(rend, opt, false, true);
    rend->add_option("--out,-o", path, "output SVG")->required();
    rend->add_option("--angular-steps", steps, "vertices per full turn on jump arcs")->check(CLI::Range(4, 1 << 20));

    auto* high = app.add_subcommand("highdim", "ball-and-cylinders comparison in dimension N");
    high->add_option("--N", N, "dimension (>= 3)")->required();
    high->add_option("--alpha", alpha, "ratio of the two cylinder radii")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run with --help for usage\n";
        return kExitInputError;
    }

    try {
        set_thread_count(threads);
        if (slice->parsed())
            return cmd_slice(opt, slice_r, out);
        if (profile->parsed())
            return cmd_profile(opt, path, out);
        if (rearr->parsed())
            return cmd_rearrange(opt, path, steps, out);
        if (verify->parsed())
            return cmd_verify(opt, path, out);
        if (shape->parsed())
            return cmd_shape(opt, path, out);
        if (rend->parsed())
            return cmd_render(opt, path, steps);
        if (high->parsed())
            return cmd_highdim(N, alpha, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace sphcap
