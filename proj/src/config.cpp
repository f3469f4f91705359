#include "ssc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ssc/rng.hpp"

namespace ssc::harness {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_cuts(const std::vector<double>& cuts) {
  std::string s;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (i) s += ",";
    s += fmt_double(cuts[i]);
  }
  return s;
}

std::vector<double> parse_cuts(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config: bad number '" + item + "' in " + key);
    }
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  throw ConfigError("config: bad boolean '" + value + "' in " + key);
}

long long parse_ll(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer '" + value + "' in " + key);
  }
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number '" + value + "' in " + key);
  }
}

std::string fmt_flags(const std::vector<bool>& flags) {
  std::string s;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) s += ",";
    s += flags[i] ? "on" : "off";
  }
  return s;
}

std::vector<bool> parse_flags(const std::string& value, const std::string& key) {
  std::vector<bool> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_bool(item, key));
  }
  if (out.empty()) throw ConfigError("config: empty flag list in " + key);
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  spec.validate();
  band_scheme().validate(spec.sample_rate_hz);
  if (hop_frames < 1 || hop_frames > spec.n_frames) {
    throw ConfigError("config: hop_frames must be in [1, n_frames]");
  }
  if (!(mixup_alpha > 0.0)) throw ConfigError("config: mixup alpha must be positive");
  if (network != "crnn" && network != "cnn") {
    throw ConfigError("config: network must be 'crnn' or 'cnn', got '" + network + "'");
  }
  if (epochs < 0) throw ConfigError("config: epochs must be >= 0");
  if (batch_size < 1) throw ConfigError("config: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("config: learning_rate must be positive");
  if (!(lr_decay_factor >= 1.0)) throw ConfigError("config: lr_decay_factor must be >= 1");
  if (lr_decay_period_epochs < 1) throw ConfigError("config: lr decay period must be >= 1");
  if (momentum < 0.0 || momentum >= 1.0) throw ConfigError("config: momentum must be in [0,1)");
  if (test_fold == val_fold) {
    throw ConfigError("config: test_fold and val_fold must be disjoint");
  }
  if (threads < 1) throw ConfigError("config: threads must be >= 1");
  for (const auto& s : sweep_networks) {
    if (s != "crnn" && s != "cnn") throw ConfigError("config: bad sweep network '" + s + "'");
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "config_version = " << c.config_version << "\n\n";
  out << "[dataset]\n";
  out << "root = " << c.dataset_root << "\n";
  out << "csv_index = " << c.csv_index << "\n\n";
  out << "[spectrogram]\n";
  out << "sample_rate_hz = " << c.spec.sample_rate_hz << "\n";
  out << "fft_size = " << c.spec.fft_size << "\n";
  out << "n_frames = " << c.spec.n_frames << "\n";
  out << "n_mels = " << c.spec.n_mels << "\n";
  out << "log_floor = " << fmt_double(c.spec.log_floor) << "\n";
  out << "hann_window = " << (c.spec.hann_window ? "true" : "false") << "\n\n";
  out << "[windowing]\n";
  out << "hop_frames = " << c.hop_frames << "\n\n";
  out << "[bands]\n";
  out << "cut_points_hz = " << fmt_cuts(c.cut_points_hz) << "\n\n";
  out << "[mixup]\n";
  out << "enabled = " << (c.mixup_enabled ? "true" : "false") << "\n";
  out << "alpha = " << fmt_double(c.mixup_alpha) << "\n\n";
  out << "[training]\n";
  out << "network = " << c.network << "\n";
  out << "epochs = " << c.epochs << "\n";
  out << "batch_size = " << c.batch_size << "\n";
  out << "learning_rate = " << fmt_double(c.learning_rate) << "\n";
  out << "lr_decay_factor = " << fmt_double(c.lr_decay_factor) << "\n";
  out << "lr_decay_period_epochs = " << c.lr_decay_period_epochs << "\n";
  out << "momentum = " << fmt_double(c.momentum) << "\n\n";
  out << "[folds]\n";
  out << "test_fold = " << c.test_fold << "\n";
  out << "val_fold = " << c.val_fold << "\n\n";
  out << "[fusion]\n";
  out << "enabled = " << (c.fusion_enabled ? "true" : "false") << "\n";
  out << "grid_step = " << fmt_double(c.fusion_grid_step) << "\n\n";
  out << "[run]\n";
  out << "seed = " << c.seed << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  out << "threads = " << c.threads << "\n\n";
  out << "[sweep]\n";
  out << "schemes = ";
  for (std::size_t i = 0; i < c.sweep_schemes.size(); ++i) {
    if (i) out << " | ";
    out << fmt_cuts(c.sweep_schemes[i]);
  }
  out << "\n";
  out << "networks = ";
  for (std::size_t i = 0; i < c.sweep_networks.size(); ++i) {
    if (i) out << ",";
    out << c.sweep_networks[i];
  }
  out << "\n";
  out << "mixup = " << fmt_flags(c.sweep_mixup) << "\n";
  out << "fusion = " << fmt_flags(c.sweep_fusion) << "\n";
  out << "report_name = " << c.sweep_report_name << "\n";
  return out.str();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("config: bad section header at line " + std::to_string(line_no));
      }
      section = t.substr(1, t.size() - 2);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected 'key = value' at line " + std::to_string(line_no));
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::string qual = section.empty() ? key : section + "." + key;

    if (qual == "config_version") {
      c.config_version = static_cast<int>(parse_ll(value, qual));
      if (c.config_version != 1) {
        throw ConfigError("config: unsupported config_version " + value);
      }
    } else if (qual == "dataset.root") {
      c.dataset_root = value;
    } else if (qual == "dataset.csv_index") {
      c.csv_index = value;
    } else if (qual == "spectrogram.sample_rate_hz") {
      c.spec.sample_rate_hz = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "spectrogram.fft_size") {
      c.spec.fft_size = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "spectrogram.n_frames") {
      c.spec.n_frames = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "spectrogram.n_mels") {
      c.spec.n_mels = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "spectrogram.log_floor") {
      c.spec.log_floor = parse_double(value, qual);
    } else if (qual == "spectrogram.hann_window") {
      c.spec.hann_window = parse_bool(value, qual);
    } else if (qual == "windowing.hop_frames") {
      c.hop_frames = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "bands.cut_points_hz") {
      c.cut_points_hz = parse_cuts(value, qual);
    } else if (qual == "mixup.enabled") {
      c.mixup_enabled = parse_bool(value, qual);
    } else if (qual == "mixup.alpha") {
      c.mixup_alpha = parse_double(value, qual);
    } else if (qual == "training.network") {
      c.network = value;
    } else if (qual == "training.epochs") {
      c.epochs = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "training.batch_size") {
      c.batch_size = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "training.learning_rate") {
      c.learning_rate = parse_double(value, qual);
    } else if (qual == "training.lr_decay_factor") {
      c.lr_decay_factor = parse_double(value, qual);
    } else if (qual == "training.lr_decay_period_epochs") {
      c.lr_decay_period_epochs = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "training.momentum") {
      c.momentum = parse_double(value, qual);
    } else if (qual == "folds.test_fold") {
      c.test_fold = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "folds.val_fold") {
      c.val_fold = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "fusion.enabled") {
      c.fusion_enabled = parse_bool(value, qual);
    } else if (qual == "fusion.grid_step") {
      c.fusion_grid_step = parse_double(value, qual);
    } else if (qual == "run.seed") {
      c.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (qual == "run.out_dir") {
      c.out_dir = value;
    } else if (qual == "run.threads") {
      c.threads = static_cast<int>(parse_ll(value, qual));
    } else if (qual == "sweep.schemes") {
      c.sweep_schemes.clear();
      std::stringstream ss(value);
      std::string scheme;
      while (std::getline(ss, scheme, '|')) {
        scheme = trim(scheme);
        if (!scheme.empty()) c.sweep_schemes.push_back(parse_cuts(scheme, qual));
      }
    } else if (qual == "sweep.networks") {
      c.sweep_networks.clear();
      std::stringstream ss(value);
      std::string net;
      while (std::getline(ss, net, ',')) {
        net = trim(net);
        if (!net.empty()) c.sweep_networks.push_back(net);
      }
    } else if (qual == "sweep.mixup") {
      c.sweep_mixup = parse_flags(value, qual);
    } else if (qual == "sweep.fusion") {
      c.sweep_fusion = parse_flags(value, qual);
    } else if (qual == "sweep.report_name") {
      c.sweep_report_name = value;
    } else {
      throw ConfigError("config: unknown key '" + qual + "' at line " + std::to_string(line_no));
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw DataError("config: cannot write " + path.string());
  out << serialize_config(cfg);
}

namespace {
std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}
}  // namespace

std::string config_hash(const ExperimentConfig& cfg) {
  // Execution details (output placement, thread count, sweep lists) do not
  // affect artifact content; normalizing them keeps a sweep-derived cell's
  // hash equal to the same configuration run standalone.
  ExperimentConfig canonical = cfg;
  canonical.out_dir = "out";
  canonical.threads = 1;
  canonical.sweep_schemes.clear();
  canonical.sweep_networks = {"crnn"};
  canonical.sweep_mixup = {true};
  canonical.sweep_fusion = {true};
  canonical.sweep_report_name = "sweep.csv";
  return hex16(fnv1a(serialize_config(canonical)));
}

std::string feature_config_hash(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << cfg.dataset_root << '\n'
      << cfg.csv_index << '\n'
      << cfg.spec.sample_rate_hz << ' ' << cfg.spec.fft_size << ' ' << cfg.spec.n_frames << ' '
      << cfg.spec.n_mels << ' ' << fmt_double(cfg.spec.log_floor) << ' '
      << cfg.spec.hann_window << '\n'
      << cfg.hop_frames << '\n';
  return hex16(fnv1a(out.str()));
}

}  // namespace ssc::harness
