#include "ssc/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "ssc/binio.hpp"

namespace ssc::nn {

namespace {

constexpr char kMagic[4] = {'S', 'S', 'N', 'N'};
constexpr std::uint16_t kVersion = 1;

void write_tensor_entry(std::ostream& out, const std::string& name, const Tensor<float>& t) {
  write_u16(out, static_cast<std::uint16_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  out.put(static_cast<char>(t.shape.size()));
  for (const int d : t.shape) write_u32(out, static_cast<std::uint32_t>(d));
  for (const float v : t.values) write_f32(out, v);
}

void read_tensor_entry(std::istream& in, std::string& name, Tensor<float>& t) {
  const std::uint16_t name_len = read_u16(in, "param name length");
  name.resize(name_len);
  read_exact(in, name.data(), name_len, "param name");
  char rank_c;
  read_exact(in, &rank_c, 1, "param rank");
  std::vector<int> shape(static_cast<unsigned char>(rank_c));
  for (int& d : shape) d = static_cast<int>(read_u32(in, "param dim"));
  t = Tensor<float>(shape);
  for (float& v : t.values) v = read_f32(in, "param payload");
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, Network<float>& net,
                     const SgdNesterov<float>* optimizer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("checkpoint: cannot write " + path.string());
  out.write(kMagic, 4);
  write_u16(out, kVersion);

  const auto params = net.params();
  write_u32(out, static_cast<std::uint32_t>(params.size()));
  for (const Param<float>* p : params) {
    write_tensor_entry(out, p->name, p->value);
  }

  out.put(optimizer ? 1 : 0);
  if (optimizer) {
    write_u32(out, static_cast<std::uint32_t>(optimizer->epoch()));
    const auto& vel = optimizer->velocities();
    if (vel.size() != params.size()) {
      throw ShapeError("checkpoint: optimizer not attached to this network");
    }
    write_u32(out, static_cast<std::uint32_t>(vel.size()));
    for (std::size_t i = 0; i < vel.size(); ++i) {
      write_tensor_entry(out, "opt." + params[i]->name, vel[i]);
    }
  }
  if (!out) throw DataError("checkpoint: write failed for " + path.string());
}

void load_checkpoint(const std::filesystem::path& path, Network<float>& net,
                     SgdNesterov<float>* optimizer) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("checkpoint: cannot open " + path.string());
  char magic[4];
  read_exact(in, magic, 4, "checkpoint magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("checkpoint: bad magic in " + path.string());
  }
  if (read_u16(in, "checkpoint version") != kVersion) {
    throw FormatError("checkpoint: unsupported version in " + path.string());
  }

  const auto params = net.params();
  const std::uint32_t count = read_u32(in, "param count");
  if (count != params.size()) {
    throw ShapeError("checkpoint: holds " + std::to_string(count) + " params, network has " +
                     std::to_string(params.size()));
  }
  std::string name;
  Tensor<float> t;
  for (Param<float>* p : params) {
    read_tensor_entry(in, name, t);
    if (name != p->name) {
      throw FormatError("checkpoint: expected param '" + p->name + "', found '" + name + "'");
    }
    if (!t.same_shape(p->value)) {
      throw ShapeError("checkpoint: shape mismatch for " + name);
    }
    p->value.values = std::move(t.values);
  }

  char has_opt;
  read_exact(in, &has_opt, 1, "optimizer flag");
  if (has_opt && optimizer) {
    optimizer->set_epoch(static_cast<int>(read_u32(in, "optimizer epoch")));
    const std::uint32_t n_vel = read_u32(in, "velocity count");
    if (n_vel != params.size()) {
      throw ShapeError("checkpoint: velocity count mismatch");
    }
    optimizer->attach(params);
    for (std::size_t i = 0; i < params.size(); ++i) {
      read_tensor_entry(in, name, t);
      if (name != "opt." + params[i]->name || !t.same_shape(params[i]->value)) {
        throw FormatError("checkpoint: bad velocity entry '" + name + "'");
      }
      optimizer->velocities()[i].values = std::move(t.values);
    }
  }
}

}  // namespace ssc::nn
