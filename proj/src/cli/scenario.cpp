// SPDX-License-Identifier: Apache-2.0
#include "wpc/cli/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "wpc/units.hpp"

namespace wpc::cli
{
namespace
{
std::string location(std::string const& source, YAML::Mark const& mark)
{
    std::ostringstream os;
    os << source;
    if (!mark.is_null())
    {
        os << ':' << mark.line + 1 << ':' << mark.column + 1;
    }
    return os.str();
}

//! Checked access to one YAML mapping.
class MapReader
{
  public:
    MapReader(YAML::Node node,
              std::string const& source,
              std::string path,
              std::set<std::string> const& allowed)
        : node_(std::move(node)), source_(source), path_(std::move(path))
    {
        if (!node_.IsMap())
        {
            fail(node_, "expected a mapping");
        }
        for (auto const& kv : node_)
        {
            auto const key = kv.first.as<std::string>();
            if (!allowed.count(key))
            {
                fail(kv.first, "unknown key '" + qualified(key) + "'");
            }
        }
    }

    bool has(std::string const& key) const { return bool(node_[key]); }

    YAML::Node node(std::string const& key) const { return node_[key]; }

    std::string qualified(std::string const& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    template<class T>
    std::optional<T> get(std::string const& key) const
    {
        auto const child = node_[key];
        if (!child)
        {
            return std::nullopt;
        }
        try
        {
            return child.as<T>();
        }
        catch (YAML::Exception const&)
        {
            fail(child, "key '" + qualified(key) + "' has the wrong type");
        }
    }

    double number(std::string const& key, double fallback) const
    {
        return get<double>(key).value_or(fallback);
    }

    [[noreturn]] void fail(YAML::Node const& at, std::string const& msg) const
    {
        throw ScenarioError(location(source_, at.Mark()) + ": " + msg);
    }

    [[noreturn]] void fail_key(std::string const& key, std::string const& msg) const
    {
        auto const child = node_[key];
        fail(child ? child : node_, "key '" + qualified(key) + "': " + msg);
    }

    std::string const& source() const { return source_; }

  private:
    YAML::Node node_;
    std::string source_;
    std::string path_;
};

// Run a domain constructor and attribute failures to the key
template<class F>
auto checked(MapReader const& reader, std::string const& key, F&& f)
{
    try
    {
        return f();
    }
    catch (std::exception const& e)
    {
        reader.fail_key(key, e.what());
    }
}

void read_carrier(YAML::Node const& node, std::string const& src, Scenario& s)
{
    MapReader r(node, src, "carrier", {"frequency_hz"});
    if (auto f = r.get<double>("frequency_hz"))
    {
        s.carrier = checked(r, "frequency_hz", [&] {
            return CarrierSpec::from_frequency(*f);
        });
    }
}

void read_transmitter(YAML::Node const& node,
                      std::string const& src,
                      Scenario& s)
{
    MapReader r(node,
                src,
                "transmitter",
                {"radiated_power_w", "aperture_radius_m", "aperture_area_m2",
                 "dc_to_rf"});
    if (r.has("aperture_radius_m") && r.has("aperture_area_m2"))
    {
        r.fail_key("aperture_area_m2",
                   "give either aperture_radius_m or aperture_area_m2");
    }
    s.transmitter.radiated_power
        = r.number("radiated_power_w", s.transmitter.radiated_power);
    s.transmitter.dc_to_rf = r.number("dc_to_rf", s.transmitter.dc_to_rf);
    if (auto rad = r.get<double>("aperture_radius_m"))
    {
        s.transmitter.aperture = checked(r, "aperture_radius_m", [&] {
            return Aperture::from_radius(*rad);
        });
    }
    if (auto area = r.get<double>("aperture_area_m2"))
    {
        s.transmitter.aperture = checked(r, "aperture_area_m2", [&] {
            return Aperture::from_area(*area);
        });
    }
    checked(r, "radiated_power_w", [&] {
        s.transmitter.validate();
        return 0;
    });
}

void read_devices(YAML::Node const& node, std::string const& src, Scenario& s)
{
    if (!node.IsSequence())
    {
        throw ScenarioError(location(src, node.Mark())
                            + ": section 'devices' must be a list");
    }
    s.devices.clear();
    for (std::size_t i = 0; i < node.size(); ++i)
    {
        MapReader r(node[i],
                    src,
                    "devices[" + std::to_string(i) + "]",
                    {"name", "consumption_w", "antenna_radius_m", "rf_to_dc",
                     "sensitivity_dbm"});
        DeviceProfile dev;
        auto name = r.get<std::string>("name");
        if (!name)
        {
            r.fail(node[i], "device entry needs a 'name'");
        }
        dev.name = *name;
        auto const consumption = r.get<double>("consumption_w");
        auto const radius = r.get<double>("antenna_radius_m");
        if (!consumption || !radius)
        {
            r.fail(node[i],
                   "device '" + dev.name
                       + "' needs consumption_w and antenna_radius_m");
        }
        dev.consumption = *consumption;
        dev.antenna_radius = *radius;
        dev.rf_to_dc = r.number("rf_to_dc", 0.7);
        if (auto dbm = r.get<double>("sensitivity_dbm"))
        {
            dev.harvester_sensitivity = dbm_to_watts(*dbm);
        }
        checked(r, "consumption_w", [&] {
            dev.validate();
            return 0;
        });
        s.devices.push_back(std::move(dev));
    }
}

void read_ambient(YAML::Node const& node, std::string const& src, Scenario& s)
{
    if (!node.IsSequence())
    {
        throw ScenarioError(location(src, node.Mark())
                            + ": section 'ambient' must be a list");
    }
    s.ambient.clear();
    for (std::size_t i = 0; i < node.size(); ++i)
    {
        MapReader r(node[i],
                    src,
                    "ambient[" + std::to_string(i) + "]",
                    {"spectrum", "environment", "density_low_w_per_m2",
                     "density_high_w_per_m2"});
        AmbientSource a;
        a.spectrum_label = r.get<std::string>("spectrum").value_or("");
        a.environment_label = r.get<std::string>("environment").value_or("");
        auto const lo = r.get<double>("density_low_w_per_m2");
        auto const hi = r.get<double>("density_high_w_per_m2");
        if (!lo || !hi)
        {
            r.fail(node[i], "ambient entry needs both density bounds");
        }
        if (!(*lo > 0 && *lo <= *hi))
        {
            r.fail_key("density_low_w_per_m2",
                       "need 0 < density_low <= density_high");
        }
        a.density_low = *lo;
        a.density_high = *hi;
        s.ambient.push_back(std::move(a));
    }
}

ExposureMode parse_mode(MapReader const& r, std::string const& text)
{
    if (text == "omni" || text == "omnidirectional")
        return ExposureMode::omnidirectional;
    if (text == "beamed")
        return ExposureMode::beamed;
    r.fail_key("mode", "expected 'omnidirectional' or 'beamed'");
}

void read_safety(YAML::Node const& node, std::string const& src, Scenario& s)
{
    MapReader r(node,
                src,
                "safety",
                {"exposure_limit_w_per_m2", "averaging_window_s",
                 "aperture_area_m2", "cases", "duty_distances_m"});
    auto& safety = s.safety;
    safety.limit.max_avg_density
        = r.number("exposure_limit_w_per_m2", safety.limit.max_avg_density);
    safety.limit.averaging_window
        = r.number("averaging_window_s", safety.limit.averaging_window);
    safety.aperture_area = r.number("aperture_area_m2", safety.aperture_area);
    checked(r, "exposure_limit_w_per_m2", [&] {
        safety.limit.validate();
        return 0;
    });
    checked(r, "aperture_area_m2", [&] {
        return Aperture::from_area(safety.aperture_area);
    });

    if (auto cases = r.node("cases"))
    {
        if (!cases.IsSequence())
        {
            r.fail_key("cases", "must be a list");
        }
        safety.cases.clear();
        for (std::size_t i = 0; i < cases.size(); ++i)
        {
            MapReader c(cases[i],
                        src,
                        "safety.cases[" + std::to_string(i) + "]",
                        {"radiated_power_w", "mode"});
            auto const p = c.get<double>("radiated_power_w");
            if (!p || !(*p > 0))
            {
                c.fail(cases[i], "case needs a positive radiated_power_w");
            }
            SafetyCase sc{*p, ExposureMode::omnidirectional};
            if (auto mode = c.get<std::string>("mode"))
            {
                sc.mode = parse_mode(c, *mode);
            }
            safety.cases.push_back(sc);
        }
    }
    if (auto d = r.get<std::vector<double>>("duty_distances_m"))
    {
        for (double v : *d)
        {
            if (!(v > 0))
                r.fail_key("duty_distances_m", "distances must be positive");
        }
        safety.duty_distances = *d;
    }
}

void read_beam(YAML::Node const& node, std::string const& src, Scenario& s)
{
    MapReader r(node,
                src,
                "beam",
                {"beacon_count", "ring_radius_m", "rows", "cols", "spacing_m",
                 "mobile_m", "synchronized", "per_beacon_power_w",
                 "map_half_width_m", "map_step_m"});
    auto& b = s.beam;
    b.beacon_count = r.get<int>("beacon_count").value_or(b.beacon_count);
    b.ring_radius = r.number("ring_radius_m", b.ring_radius);
    b.rows = r.get<int>("rows").value_or(b.rows);
    b.cols = r.get<int>("cols").value_or(b.cols);
    if (auto sp = r.get<double>("spacing_m"))
    {
        b.spacing = *sp;
    }
    if (auto m = r.get<std::vector<double>>("mobile_m"))
    {
        if (m->size() != 3)
        {
            r.fail_key("mobile_m", "expected [x, y, z]");
        }
        b.mobile = {(*m)[0], (*m)[1], (*m)[2]};
    }
    b.synchronized = r.get<bool>("synchronized").value_or(b.synchronized);
    b.per_beacon_power = r.number("per_beacon_power_w", b.per_beacon_power);
    b.map_half_width = r.number("map_half_width_m", b.map_half_width);
    b.map_step = r.number("map_step_m", b.map_step);

    if (b.beacon_count < 2)
        r.fail_key("beacon_count", "need at least two beacons");
    if (b.rows < 1 || b.cols < 1)
        r.fail_key("rows", "array dimensions must be positive");
    if (!(b.ring_radius > 0))
        r.fail_key("ring_radius_m", "must be positive");
    if (b.spacing && !(*b.spacing > 0))
        r.fail_key("spacing_m", "must be positive");
    if (!(b.per_beacon_power > 0))
        r.fail_key("per_beacon_power_w", "must be positive");
    if (!(b.map_half_width >= 0))
        r.fail_key("map_half_width_m", "must be non-negative");
    if (!(b.map_step > 0))
        r.fail_key("map_step_m", "must be positive");
}

void read_network(YAML::Node const& node, std::string const& src, Scenario& s)
{
    MapReader r(node,
                src,
                "network",
                {"pb_density", "bs_density", "region_side_m",
                 "snr_threshold_db", "pathloss_exponent", "noise_dbm", "seed",
                 "replications", "samples_per_replication", "bs_tx_power_w",
                 "bs_swipt", "accumulate_beacons", "uplink_extra_consumption_w",
                 "device", "target_joint_coverage", "bs_density_grid",
                 "pb_density_grid"});
    auto& n = s.network;
    auto& ns = n.scenario;
    ns.pb_density = r.number("pb_density", ns.pb_density);
    ns.bs_density = r.number("bs_density", ns.bs_density);
    ns.region_side = r.number("region_side_m", ns.region_side);
    ns.it_snr_threshold_db = r.number("snr_threshold_db", ns.it_snr_threshold_db);
    ns.it_pathloss_exponent
        = r.number("pathloss_exponent", ns.it_pathloss_exponent);
    if (auto dbm = r.get<double>("noise_dbm"))
    {
        ns.noise_power = dbm_to_watts(*dbm);
    }
    ns.seed = r.get<std::uint64_t>("seed").value_or(ns.seed);
    ns.replications = r.get<std::size_t>("replications").value_or(ns.replications);
    ns.samples_per_replication = r.get<std::size_t>("samples_per_replication")
                                     .value_or(ns.samples_per_replication);
    ns.bs_tx_power = r.number("bs_tx_power_w", ns.bs_tx_power);
    ns.bs_swipt = r.get<bool>("bs_swipt").value_or(ns.bs_swipt);
    ns.accumulate_beacons
        = r.get<bool>("accumulate_beacons").value_or(ns.accumulate_beacons);
    ns.uplink_extra_consumption
        = r.number("uplink_extra_consumption_w", ns.uplink_extra_consumption);
    n.device_name = r.get<std::string>("device").value_or(n.device_name);
    n.target_joint_coverage
        = r.number("target_joint_coverage", n.target_joint_coverage);
    n.bs_density_grid = r.get<std::vector<double>>("bs_density_grid")
                            .value_or(n.bs_density_grid);
    n.pb_density_grid = r.get<std::vector<double>>("pb_density_grid")
                            .value_or(n.pb_density_grid);
    if (n.device_name.empty())
    {
        r.fail_key("device", "must name a device");
    }
}

// Bind the network section to the resolved device and transmitter
void finish_network(Scenario& s, YAML::Node const& root)
{
    auto const* dev = find_device(s.devices, s.network.device_name);
    if (!dev)
    {
        auto const net = root ? root["network"] : YAML::Node{};
        auto const at = net && net["device"] ? net["device"].Mark()
                                             : YAML::Mark::null_mark();
        throw ScenarioError(location(s.source, at) + ": key 'network.device': no device named '"
                            + s.network.device_name + "'");
    }
    s.network.scenario.device = *dev;
    s.network.scenario.transmitter = s.transmitter;
}

void default_grids(NetworkSection& n)
{
    if (n.bs_density_grid.empty())
        n.bs_density_grid = {1e-6, 1e-5, 1e-4};
    if (n.pb_density_grid.empty())
        n.pb_density_grid = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2};
}
}  // namespace

Scenario Scenario::builtin()
{
    Scenario s;
    s.safety.cases = {{50.0, ExposureMode::omnidirectional},
                      {10.0, ExposureMode::beamed},
                      {50.0, ExposureMode::beamed}};
    s.network.scenario.replications = 200;
    s.network.scenario.samples_per_replication = 50;
    default_grids(s.network);
    finish_network(s, YAML::Node{});
    return s;
}

Scenario parse_scenario(std::string const& text, std::string const& source)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(text);
    }
    catch (YAML::ParserException const& e)
    {
        throw ScenarioError(location(source, e.mark) + ": " + e.msg);
    }

    Scenario s = Scenario::builtin();
    s.source = source;
    s.hash = sha256_hex(text);
    if (root.IsNull())
    {
        return s;
    }
    MapReader top(root,
                  source,
                  "",
                  {"carrier", "transmitter", "devices", "ambient", "safety",
                   "beam", "network"});
    try
    {
        if (auto n = root["carrier"])
            read_carrier(n, source, s);
        s.transmitter.carrier = s.carrier;
        if (auto n = root["transmitter"])
            read_transmitter(n, source, s);
        if (auto n = root["devices"])
            read_devices(n, source, s);
        if (auto n = root["ambient"])
            read_ambient(n, source, s);
        if (auto n = root["safety"])
            read_safety(n, source, s);
        if (auto n = root["beam"])
            read_beam(n, source, s);
        if (auto n = root["network"])
            read_network(n, source, s);
    }
    catch (YAML::Exception const& e)
    {
        throw ScenarioError(location(source, e.mark) + ": " + e.msg);
    }
    finish_network(s, root);
    return s;
}

Scenario load_scenario(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ScenarioError(path + ": cannot open scenario file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

std::string sha256_hex(std::string const& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)
        != 1)
    {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
    {
        os << std::setw(2) << static_cast<int>(digest[i]);
    }
    return os.str();
}

}  // namespace wpc::cli
