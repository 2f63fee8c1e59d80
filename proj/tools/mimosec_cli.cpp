// SPDX-License-Identifier: Apache-2.0
//
// mimosec: secrecy rate regions for the two-user MIMO Gaussian broadcast channel
// Copyright (C) 2026 The mimosec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end. Exit codes: 0 ok, 1 invariant violation,
// 2 input error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <mimosec/avgpower.hpp>
#include <mimosec/baseline.hpp>
#include <mimosec/csv.hpp>
#include <mimosec/invariants.hpp>
#include <mimosec/miso.hpp>
#include <mimosec/precoder.hpp>
#include <mimosec/sdpc.hpp>

#include "channel_io.hpp"

namespace
{

using namespace mimosec;

enum Exit
{
    exit_ok = 0,
    exit_violation = 1,
    exit_input = 2,
    exit_numerical = 3
};

struct Common
{
    std::string channels;
    std::string out;
    double power = 0.0;
    bool nats = false;
};

double resolve_power(const Common &c, const io::ChannelFile &file)
{
    const double pt = c.power > 0.0 ? c.power : file.pt.value_or(0.0);
    if (!(pt > 0.0))
        throw Error(Errc::InvalidArgument, "power", "give --power or \"Pt\" in the channel file");
    return pt;
}

void emit(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
        std::cout << text << std::flush;
    else
        io::write_text_file(path, text);
}

std::string csv_text(const RegionTable &t)
{
    std::ostringstream os;
    write_region_csv(os, t);
    return os.str();
}

int cmd_region(const Common &c, Index grid, const std::string &dump_sw, double dump_alpha)
{
    const io::ChannelFile file = io::read_channel_file(c.channels);
    const double pt = resolve_power(c, file);
    const DiagonalizedChannel dc = diagonalize(file.channel);
    const RegionSweep sweep = region_sweep(dc, pt, grid);
    emit(c.out, csv_text(region_table(sweep.points, c.nats ? RateUnit::nats : RateUnit::bits)));

    if (!dump_sw.empty())
    {
        if (!(dump_alpha >= 0.0 && dump_alpha <= 1.0))
            throw Error(Errc::InvalidArgument, "region", "--dump-alpha outside [0, 1]");
        const MatrixConstraint s = make_matrix_constraint(dc, allocate(dc, pt, dump_alpha).stacked());
        const io::json doc = {{"S", io::matrix_to_json(s.matrix())}, {"alpha", dump_alpha}, {"Pt", pt}};
        io::write_text_file(dump_sw, doc.dump(2) + "\n");
    }
    return exit_ok;
}

int cmd_corner(const Common &c, const std::string &constraint)
{
    const io::ChannelFile file = io::read_channel_file(c.channels);
    const MatrixConstraint s(io::read_constraint_file(constraint));
    const SdpcSolution sol = solve_matrix_constraint(file.channel, s);
    const RateUnit unit = c.nats ? RateUnit::nats : RateUnit::bits;
    const std::string suffix = c.nats ? "_nats" : "_bits";
    io::json doc;
    doc["R1" + suffix] = to_unit(sol.corner.r1, unit);
    doc["R2" + suffix] = to_unit(sol.corner.r2, unit);
    doc["b"] = sol.split();
    doc["defect"] = orthogonality_defect(sol);
    std::cout << doc.dump(2) << '\n';
    return exit_ok;
}

int cmd_miso(const Common &c, Index grid)
{
    const io::ChannelFile file = io::read_channel_file(c.channels);
    const double pt = resolve_power(c, file);
    const MisoChannel ch = MisoChannel::from_channel(file.channel);
    const RateUnit unit = c.nats ? RateUnit::nats : RateUnit::bits;
    std::ostringstream os;
    os << "alpha,C1,C2,R1,R2\n";
    for (const MisoRegionPoint &p : miso_region(ch, pt, grid))
        os << format_double(p.alpha) << ',' << format_double(to_unit(p.cap1, unit)) << ','
           << format_double(to_unit(p.cap2, unit)) << ',' << format_double(to_unit(p.rate1, unit)) << ','
           << format_double(to_unit(p.rate2, unit)) << '\n';
    emit(c.out, os.str());
    return exit_ok;
}

int cmd_baseline(const Common &c, SearchConfig cfg)
{
    const io::ChannelFile file = io::read_channel_file(c.channels);
    cfg.pt = resolve_power(c, file);
    const RegionEstimate est = search_region(file.channel, cfg);
    std::vector<CornerPoint> vertices;
    for (const RatePoint &v : est.hull.vertices())
        vertices.push_back({v.r1, v.r2, std::nullopt, "hull"});
    emit(c.out, csv_text(region_table(vertices, c.nats ? RateUnit::nats : RateUnit::bits)));
    return exit_ok;
}

int cmd_check(const CheckConfig &cfg, const std::string &report_path)
{
    const InvariantReport report = run_invariant_battery(cfg);
    std::printf("%-28s %12s %10s %6s %6s\n", "invariant", "max_resid", "tol", "n", "viol");
    io::json doc = {{"trials", cfg.trials}, {"dim", cfg.dim}, {"seed", cfg.seed}, {"ok", report.ok()}};
    doc["invariants"] = io::json::array();
    for (const InvariantResult &r : report.results)
    {
        std::printf("%-28s %12.3e %10.1e %6lld %6lld %s\n", r.name.c_str(), r.max_residual, r.tolerance,
                    static_cast<long long>(r.evaluations), static_cast<long long>(r.violations),
                    r.ok() ? "ok" : "VIOLATED");
        doc["invariants"].push_back({{"name", r.name},
                                     {"max_residual", r.max_residual},
                                     {"tolerance", r.tolerance},
                                     {"evaluations", r.evaluations},
                                     {"violations", r.violations}});
    }
    std::printf("%s: %lld violation(s) over %lld trial(s)\n", report.ok() ? "PASS" : "FAIL",
                static_cast<long long>(report.violations()), static_cast<long long>(cfg.trials));
    if (report_path.empty())
        std::cout << doc.dump() << '\n';
    else
        io::write_text_file(report_path, doc.dump(2) + "\n");
    return report.ok() ? exit_ok : exit_violation;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Secrecy rate regions for the two-user MIMO Gaussian broadcast channel"};
    app.require_subcommand(1);

    Common common;
    const auto add_common = [&common](CLI::App *sub, bool with_power) {
        sub->add_option("--channels", common.channels, "channel JSON file")->required();
        if (with_power)
            sub->add_option("--power", common.power, "total transmit power Pt (overrides the file)");
        sub->add_option("--out", common.out, "output path (default stdout)");
        sub->add_flag("--nats", common.nats, "report rates in nats instead of bits");
    };

    Index grid = default_alpha_grid;
    std::string dump_sw;
    double dump_alpha = 0.5;
    CLI::App *region = app.add_subcommand("region", "average-power region sweep");
    add_common(region, true);
    region->add_option("--alpha-grid", grid, "number of alpha points")->check(CLI::Range(2, 1000000));
    region->add_option("--dump-sw", dump_sw, "write the S_w constraint at --dump-alpha as JSON");
    region->add_option("--dump-alpha", dump_alpha, "alpha for --dump-sw");

    std::string constraint;
    CLI::App *corner = app.add_subcommand("corner", "corner point for a matrix constraint");
    add_common(corner, false);
    corner->add_option("--constraint", constraint, "constraint JSON file")->required();

    CLI::App *miso = app.add_subcommand("miso", "MISO capacity and linear precoding regions");
    add_common(miso, true);
    miso->add_option("--alpha-grid", grid, "number of alpha points")->check(CLI::Range(2, 1000000));

    SearchConfig search;
    CLI::App *baseline = app.add_subcommand("baseline", "randomized search over matrix constraints");
    add_common(baseline, true);
    baseline->add_option("--samples", search.samples, "number of sampled constraints")->check(CLI::PositiveNumber);
    baseline->add_option("--seed", search.seed, "random seed");
    baseline->add_flag("--with-sw", search.include_sw_family, "also evaluate the average-power constraints");
    baseline->add_option("--alpha-grid", search.alpha_grid, "alpha points for --with-sw")->check(CLI::Range(2, 1000000));

    CheckConfig check;
    bool inject = false;
    std::string report;
    CLI::App *chk = app.add_subcommand("check", "randomized invariant battery");
    chk->add_option("--trials", check.trials, "number of random instances")->check(CLI::NonNegativeNumber);
    chk->add_option("--dim", check.dim, "transmit antennas")->check(CLI::Range(1, 64));
    chk->add_option("--seed", check.seed, "random seed");
    chk->add_flag("--inject-fault", inject, "corrupt the eigenvectors before checking (self-test)");
    chk->add_option("--report", report, "write the JSON report here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (region->parsed())
            return cmd_region(common, grid, dump_sw, dump_alpha);
        if (corner->parsed())
            return cmd_corner(common, constraint);
        if (miso->parsed())
            return cmd_miso(common, grid);
        if (baseline->parsed())
            return cmd_baseline(common, search);
        if (chk->parsed())
        {
            check.fault = inject ? FaultInjection::corrupt_gevd : FaultInjection::none;
            return cmd_check(check, report);
        }
    }
    catch (const Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_input_error() ? exit_input : exit_numerical;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_input;
}
