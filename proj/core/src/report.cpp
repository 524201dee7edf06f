#include "dqlab/report.hpp"

#include <cmath>
#include <cstdio>

namespace dqlab {

std::string format_number(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s(buf);
  // Bare integers and exponents are valid JSON already; "inf"/"nan" are not,
  // but those were handled above.
  return s;
}

Json Json::null() { return Json(); }

Json Json::boolean(bool b) {
  Json j;
  j.type_ = Type::boolean;
  j.b_ = b;
  return j;
}

Json Json::number(double v) {
  Json j;
  j.type_ = Type::number;
  j.num_ = v;
  return j;
}

Json Json::integer(long long v) {
  Json j;
  j.type_ = Type::integer;
  j.int_ = v;
  return j;
}

Json Json::string(std::string s) {
  Json j;
  j.type_ = Type::string;
  j.str_ = std::move(s);
  return j;
}

Json Json::array() {
  Json j;
  j.type_ = Type::array;
  return j;
}

Json Json::object() {
  Json j;
  j.type_ = Type::object;
  return j;
}

Json& Json::set(const std::string& key, Json v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if ((unsigned char)c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(std::size_t(indent) * depth, ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  switch (type_) {
    case Type::null:
      out += "null";
      break;
    case Type::boolean:
      out += b_ ? "true" : "false";
      break;
    case Type::number:
      out += format_number(num_);
      break;
    case Type::integer:
      out += std::to_string(int_);
      break;
    case Type::string:
      write_escaped(out, str_);
      break;
    case Type::array: {
      out += '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        newline(out, indent, depth + 1);
        items_[i].write(out, indent, depth + 1);
      }
      if (!items_.empty()) newline(out, indent, depth);
      out += ']';
      break;
    }
    case Type::object: {
      out += '{';
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ',';
        newline(out, indent, depth + 1);
        write_escaped(out, members_[i].first);
        out += indent < 0 ? ":" : ": ";
        members_[i].second.write(out, indent, depth + 1);
      }
      if (!members_.empty()) newline(out, indent, depth);
      out += '}';
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

Json to_json(const StatReport& r) {
  Json j = Json::object();
  j.set("score", Json::number(r.score));
  j.set("cost_worst", Json::integer(r.cost_worst));
  j.set("cost_avg_worst", Json::number(r.cost_avg_worst));
  j.set("cost_avg", Json::number(r.cost_avg));
  j.set("scost", Json::number(r.scost));
  j.set("discounted", Json::number(r.discounted));
  j.set("hellinger_loss", Json::number(r.hel_loss));
  j.set("labeled_success", Json::number(r.labeled_success));
  j.set("all_labeled", Json::boolean(r.all_labeled));
  return j;
}

Json to_json(const AxiomReport& r) {
  Json j = Json::object();
  j.set("bounded", Json::boolean(r.bounded));
  j.set("normalized", Json::boolean(r.normalized));
  j.set("symmetric", Json::boolean(r.symmetric));
  j.set("monotone", Json::boolean(r.monotone));
  j.set("continuous", Json::boolean(r.continuous));
  j.set("lipschitz", Json::number(r.lipschitz));
  j.set("all", Json::boolean(r.all()));
  return j;
}

Json to_json(const AlphaStar& a) {
  Json j = Json::object();
  j.set("alpha_star", Json::number(a.alpha));
  j.set("ds", Json::number(a.ds));
  j.set("score", Json::number(a.score));
  j.set("score_low", Json::number(a.score_low));
  j.set("score_high", Json::number(a.score_high));
  j.set("degenerate", Json::boolean(a.degenerate));
  j.set("witness", Json::string(a.mixture.serialize()));
  return j;
}

Json to_json(const EquivalenceReport& r) {
  Json j = Json::object();
  j.set("swR", Json::number(r.svalue));
  Json grid = Json::array();
  for (std::size_t i = 0; i < r.alphas.size(); ++i) {
    Json pt = Json::object();
    pt.set("alpha", Json::number(r.alphas[i]));
    pt.set("lower_bound", Json::number(r.lower[i]));
    grid.push(std::move(pt));
  }
  j.set("lower_grid", std::move(grid));
  j.set("alpha_star", to_json(r.astar));
  j.set("upper_bound", Json::number(r.upper));
  j.set("lower_ok", Json::boolean(r.lower_ok));
  j.set("upper_ok", Json::boolean(r.upper_ok));
  return j;
}

Json to_json(const ConstructionReport& r) {
  Json j = Json::object();
  j.set("measured", to_json(r.measured));
  j.set("target", Json::number(r.target));
  j.set("budget", Json::number(r.budget));
  j.set("pass", Json::boolean(r.pass));
  Json details = Json::object();
  for (auto& [k, v] : r.details) details.set(k, Json::number(v));
  j.set("details", std::move(details));
  j.set("witness", Json::string(r.alg.serialize()));
  return j;
}

Json to_json(const ParetoFront& front) {
  Json j = Json::object();
  j.set("objective",
        Json::string(front.objective == CostObjective::expected_cost
                         ? "expected_cost"
                         : "score_weighted_cost"));
  Json pts = Json::array();
  for (auto& p : front.pts) {
    Json pt = Json::object();
    pt.set("score", Json::number(p.score));
    pt.set("cost", Json::number(p.cost));
    pt.set("witness", Json::string(p.tree.to_sexpr()));
    pts.push(std::move(pt));
  }
  j.set("points", std::move(pts));
  return j;
}

Json report_envelope(const std::string& command) {
  Json j = Json::object();
  j.set("schema", Json::integer(1));
  j.set("command", Json::string(command));
  return j;
}

}  // namespace dqlab
