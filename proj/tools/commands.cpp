#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qli/errors.hpp"
#include "qli/injection.hpp"
#include "qli/keyrate.hpp"
#include "qli/profile.hpp"
#include "qli/qrng.hpp"
#include "qli/randtests.hpp"
#include "qli/sweep_csv.hpp"
#include "quantity.hpp"

namespace qli::cli {

namespace {

HardwareProfile resolve_profile(const std::string& path)
{
    if (!path.empty())
        return load_profile(path);
    if (const char* env = std::getenv("QLI_PROFILE"); env && *env)
        return load_profile(env);
    return {};
}

// Output stream that is either a file or the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback)
    {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_)
            throw std::runtime_error("cannot write " + path);
        stream_ = &file_;
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

struct ModelOptions {
    std::string profile;
    std::optional<double> atten;
    std::optional<double> eta;
    std::optional<double> pd;
    std::optional<double> visibility;
    std::string pns_term;
    bool numeric_mu = false;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--profile", profile, "Hardware profile (default: $QLI_PROFILE)");
        cmd->add_option("--atten-db-per-km", atten, "Fiber attenuation in dB/km");
        cmd->add_option("--eta", eta, "Detector efficiency");
        cmd->add_option("--pd", pd, "BB84 dark count probability per gate");
        cmd->add_option("--visibility", visibility, "BB84 interference visibility");
        cmd->add_option("--pns-term", pns_term, "BB84 leakage factor: t (t - mu/2) or unit (1 - mu/2)")
            ->check(CLI::IsMember({"t", "unit"}));
        cmd->add_flag("--numeric-mu", numeric_mu, "BB84: numerically optimal mu instead of mu = t");
    }

    AttackModel build() const
    {
        const auto hw = resolve_profile(profile);
        AttackModel m;
        m.budget = hw.budget;
        m.source = hw.source;
        m.atten_db_per_km = atten.value_or(hw.fiber_atten_db_per_km);
        if (eta) {
            m.sarg.detector_efficiency = *eta;
            m.bb84.detector_efficiency = *eta;
        }
        if (pd)
            m.bb84.dark_count_prob = *pd;
        if (visibility)
            m.bb84.visibility = *visibility;
        if (pns_term == "t")
            m.bb84.pns_term = PnsTerm::TransmissionLeading;
        else if (pns_term == "unit")
            m.bb84.pns_term = PnsTerm::UnitLeading;
        m.numeric_mu = numeric_mu;
        m.sarg.validate();
        m.bb84.validate();
        return m;
    }
};

struct KeyrateArgs {
    std::string protocol;
    std::string dist = "0:120:1";
    std::string energies = "0";
    std::string output;
    bool raw_rates = false;
    ModelOptions model;
};

int cmd_keyrate(const KeyrateArgs& a, std::ostream& out, std::ostream& err)
{
    const auto protocol = parse_protocol(a.protocol);
    const auto range = parse_range(a.dist);
    const auto energies = parse_quantity_list(a.energies, Dimension::Energy, &err);
    const auto model = a.model.build();
    const auto rows = sweep(protocol, distance_grid(range.start, range.stop, range.step), energies, model);
    Sink sink(a.output, out);
    write_sweep_csv(sink.get(), rows, a.raw_rates ? RateRendering::Raw : RateRendering::ClampInsecure);
    return kExitOk;
}

struct CutoffArgs {
    std::string protocol;
    std::string energies = "4uJ,6uJ,8uJ,10uJ";
    double max_loss_db = kMaxChannelLossDb;
    ModelOptions model;
};

int cmd_cutoff(const CutoffArgs& a, std::ostream& out, std::ostream& err)
{
    const auto protocol = parse_protocol(a.protocol);
    const auto energies = parse_quantity_list(a.energies, Dimension::Energy, &err);
    const auto model = a.model.build();
    out << "pulse_energy_j,cutoff_km\n";
    for (double e : energies) {
        const auto d = cutoff_distance(protocol, e, model, a.max_loss_db);
        out << format_double(e) << ',' << (d ? format_double(*d) : std::string("none")) << '\n';
    }
    return kExitOk;
}

struct BudgetArgs {
    std::string energy;
    std::string rep_rate;
    std::string bin = "20ns";
    double distance_km = 0.0;
    ModelOptions model;
};

int cmd_attack_budget(const BudgetArgs& a, std::ostream& out, std::ostream& err)
{
    const double energy = parse_quantity(a.energy, Dimension::Energy, &err);
    const double bin = parse_quantity(a.bin, Dimension::Time, &err);
    const auto hw = resolve_profile(a.model.profile);
    const FrameSchedule frames;
    const AttackLaser laser{energy, bin,
                            a.rep_rate.empty() ? frames.pulses_per_second()
                                               : parse_quantity(a.rep_rate, Dimension::Frequency, &err)};

    const double mu_inj = extrapolate_mu_inj(energy);
    const double atten = a.model.atten.value_or(hw.fiber_atten_db_per_km);
    const auto t = channel_transmission(a.distance_km, atten);
    const double ext_bb84 = mu_ext(mu_inj, Protocol::BB84, t, hw.source, hw.budget);
    const double ext_sarg = mu_ext(mu_inj, Protocol::SARG04, t, hw.source, hw.budget);
    const double cw = cw_equivalent_power(energy, bin);

    out << std::setprecision(6);
    auto line = [&](std::string_view name, auto value, std::string_view unit) {
        out << std::left << std::setw(28) << name << value;
        if (!unit.empty())
            out << ' ' << unit;
        out << '\n';
    };
    line("pulse_energy", energy, "J");
    line("mu_inj", mu_inj, "photons/bin");
    line("channel_transmission", t.value(), "");
    line("mu_ext_bb84", ext_bb84, "photons/pulse");
    line("mu_ext_sarg04", ext_sarg, "photons/pulse");
    line("repetition_rate", laser.repetition_rate, "Hz");
    line("burst_repetition_rate", frames.burst_rate(), "Hz");
    line("average_power", average_attack_power(laser), "W");
    line("cw_equivalent_power", cw, "W");
    if (mu_inj > 0.0)
        line("coupling_attenuation", coupling_attenuation(cw, mu_inj, bin, hw.wavelength).value, "dB");
    else
        line("coupling_attenuation", "n/a", "");
    return kExitOk;
}

struct MuInjArgs {
    std::string counts;
    std::string dark;
    std::string dark_rate;
    std::string gate_rate = "100kHz";
    double eta = 0.1;
    std::string gate_width = "20ns";
    std::string window;
    std::string bin_width;
    std::string modulation_window;
};

int cmd_mu_inj(const MuInjArgs& a, std::ostream& out, std::ostream& err)
{
    IntegrationWindow window;
    if (!a.window.empty()) {
        const auto [s, e] = parse_interval(a.window);
        window = {s, e};
    }
    std::optional<double> bin;
    if (!a.bin_width.empty())
        bin = parse_quantity(a.bin_width, Dimension::Time, &err);

    const auto signal = integrate_counts(load_counter_log(a.counts), window, bin);
    GatedCounterReading reading;
    reading.count_rate = signal.rate;
    std::optional<double> tau = signal.duration;
    if (!a.dark.empty()) {
        const auto dark = integrate_counts(load_counter_log(a.dark), window, bin);
        reading.dark_rate = dark.rate;
    } else if (!a.dark_rate.empty()) {
        reading.dark_rate = parse_quantity(a.dark_rate, Dimension::Frequency, &err);
    } else {
        throw UsageError("give --dark or --dark-rate");
    }
    reading.gate_rate = parse_quantity(a.gate_rate, Dimension::Frequency, &err);
    reading.gate_width = parse_quantity(a.gate_width, Dimension::Time, &err);
    reading.efficiency = a.eta;

    InferenceOptions opts;
    opts.integration_time = tau;
    if (!a.modulation_window.empty())
        opts.modulation_window = parse_quantity(a.modulation_window, Dimension::Time, &err);
    const auto est = estimate_mu_inj(reading, opts);

    out << std::setprecision(6);
    out << "count_rate " << reading.count_rate << " counts/s\n"
        << "dark_rate " << reading.dark_rate << " counts/s\n"
        << "integration_time " << signal.duration << " s\n"
        << "mu_inj " << est.value << '\n';
    if (est.std_error)
        out << "mu_inj_std_error " << *est.std_error << '\n';
    return kExitOk;
}

struct QrngArgs {
    std::size_t bits = 0;
    std::string rate_set = "12.5MHz";
    std::string rate_reset = "12.5MHz";
    std::string sample_rate = "1MHz";
    std::string inject_rate = "0";
    std::string target = "set";
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "raw";
    int initial_level = 0;
};

int cmd_qrng(const QrngArgs& a, std::ostream& out, std::ostream& err)
{
    ToggleQrngConfig config;
    config.rate_set = parse_quantity(a.rate_set, Dimension::Frequency, &err);
    config.rate_reset = parse_quantity(a.rate_reset, Dimension::Frequency, &err);
    config.sample_rate = parse_quantity(a.sample_rate, Dimension::Frequency, &err);
    config.seed = a.seed;
    config.initial_level = a.initial_level != 0;
    InjectionBias bias{parse_quantity(a.inject_rate, Dimension::Frequency, &err),
                       a.target == "reset" ? BiasTarget::Reset : BiasTarget::Set};
    const auto format = parse_bit_format(a.format);

    const auto bits = simulate(config, bias, a.bits);
    write_bits(a.output, bits, format);
    out << std::setprecision(6) << "bits " << bits.size() << '\n'
        << "ones_ratio " << ones_ratio(bits) << '\n'
        << "steady_state_p1 " << steady_state_p1(config, bias) << '\n';
    return kExitOk;
}

struct RandtestArgs {
    std::string input;
    std::string format = "raw";
    std::string tests = "fips,chisq";
    std::string csv;
};

int cmd_randtest(const RandtestArgs& a, std::ostream& out, std::ostream&)
{
    const auto selection = parse_test_selection(a.tests);
    const auto format = parse_bit_format(a.format);
    if (!std::filesystem::exists(a.input))
        throw std::runtime_error("input file " + a.input + " does not exist");
    const auto report = score_file(a.input, selection, format);
    write_report_table(out, report);
    if (!a.csv.empty()) {
        Sink sink(a.csv, out);
        write_report_csv(sink.get(), report);
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Light-injection attack models for QKD links and toggle QRNGs", "qli"};
    app.require_subcommand(0, 1);

    KeyrateArgs keyrate;
    auto* kr = app.add_subcommand("keyrate", "Secret key rate sweep as CSV");
    kr->add_option("--protocol", keyrate.protocol, "bb84 or sarg04")->required();
    kr->add_option("--dist-km", keyrate.dist, "Distance grid START:STOP:STEP in km");
    kr->add_option("--pulse-energy", keyrate.energies, "Comma list of laser energies per bin (e.g. 0,4uJ)");
    kr->add_option("-o,--output", keyrate.output, "CSV output file (default stdout)");
    kr->add_flag("--raw-rates", keyrate.raw_rates, "Write negative rates instead of 0 for insecure rows");
    keyrate.model.attach(kr);

    CutoffArgs cutoff;
    auto* co = app.add_subcommand("cutoff", "Distance where the attacked key rate reaches zero");
    co->add_option("--protocol", cutoff.protocol, "bb84 or sarg04")->required();
    co->add_option("--pulse-energy", cutoff.energies, "Comma list of laser energies per bin");
    co->add_option("--max-loss-db", cutoff.max_loss_db, "Search up to this channel loss");
    cutoff.model.attach(co);

    BudgetArgs budget;
    auto* ab = app.add_subcommand("attack-budget", "Photon numbers and laser power for an attack");
    ab->add_option("--pulse-energy", budget.energy, "Laser energy per time bin (e.g. 4uJ)")->required();
    ab->add_option("--rep-rate", budget.rep_rate, "Laser pulses per second (default: one per data pulse)");
    ab->add_option("--bin", budget.bin, "Modulation time bin");
    ab->add_option("--dist-km", budget.distance_km, "Link length used for the SARG04 VOA setting");
    budget.model.attach(ab);

    MuInjArgs muinj;
    auto* mi = app.add_subcommand("mu-inj", "Injected photons per gate from counter logs");
    mi->add_option("--counts", muinj.counts, "Counter log (time_s,counts) with the laser on")->required();
    mi->add_option("--dark", muinj.dark, "Counter log with the laser off");
    mi->add_option("--dark-rate", muinj.dark_rate, "Dark count rate instead of --dark");
    mi->add_option("--gate-rate", muinj.gate_rate, "Detector gate rate");
    mi->add_option("--eta", muinj.eta, "Detector efficiency");
    mi->add_option("--gate-width", muinj.gate_width, "Detector gate width");
    mi->add_option("--window", muinj.window, "Integration window START:END in s");
    mi->add_option("--bin-width", muinj.bin_width, "Counter bin width (default: row spacing)");
    mi->add_option("--modulation-window", muinj.modulation_window, "Rescale to this active window");

    QrngArgs qrng;
    auto* qr = app.add_subcommand("qrng", "Simulate the toggle QRNG and write its bits");
    qr->add_option("--bits", qrng.bits, "Number of bits")->required()->check(CLI::PositiveNumber);
    qr->add_option("--rate-set", qrng.rate_set, "Count rate of the detector that sets the level");
    qr->add_option("--rate-reset", qrng.rate_reset, "Count rate of the detector that resets the level");
    qr->add_option("--sample-rate", qrng.sample_rate, "Sampling clock");
    qr->add_option("--inject-rate", qrng.inject_rate, "Extra count rate from injected light (may be negative)");
    qr->add_option("--target", qrng.target, "Detector receiving the injected light")
        ->check(CLI::IsMember({"set", "reset"}));
    qr->add_option("--seed", qrng.seed, "RNG seed")->required();
    qr->add_option("-o,--output", qrng.output, "Output bit file")->required();
    qr->add_option("--format", qrng.format, "raw or ascii01")->check(CLI::IsMember({"raw", "ascii01"}));
    qr->add_option("--initial-level", qrng.initial_level, "Level before the first click (0 or 1)")
        ->check(CLI::Range(0, 1));

    RandtestArgs randtest;
    auto* rt = app.add_subcommand("randtest", "FIPS 140-2 and chi-square tests on a bit file");
    rt->add_option("--input", randtest.input, "Bit file")->required();
    rt->add_option("--format", randtest.format, "raw or ascii01")->check(CLI::IsMember({"raw", "ascii01"}));
    rt->add_option("--tests", randtest.tests, "Comma list of fips, chisq");
    rt->add_option("--csv", randtest.csv, "Write per-block results as CSV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (kr->parsed())
            return cmd_keyrate(keyrate, out, err);
        if (co->parsed())
            return cmd_cutoff(cutoff, out, err);
        if (ab->parsed())
            return cmd_attack_budget(budget, out, err);
        if (mi->parsed())
            return cmd_mu_inj(muinj, out, err);
        if (qr->parsed())
            return cmd_qrng(qrng, out, err);
        if (rt->parsed())
            return cmd_randtest(randtest, out, err);
    } catch (const UsageError& e) {
        err << "qli: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "qli: " << e.what() << '\n';
        return kExitError;
    }

    err << app.help();
    return kExitUsage;
}

} // namespace qli::cli
