#include <algorithm>
#include <climits>

#include "tlg/diagram.hpp"
#include "tlg/error.hpp"

namespace tlg {

namespace {

struct Wire {
  Port src;
  WireType type;
};
using Wires = std::vector<Wire>;

Wires slice(const Wires& w, std::size_t from, std::size_t to) {
  return Wires(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

Wires concat(Wires a, const Wires& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

class Compiler {
 public:
  explicit Compiler(Diagram& d) : d_(d) {}

  Wires run(const ProofTree& t, std::vector<Wires> ante) {
    const Sequent& seq = t.conclusion();
    if (ante.size() != seq.antecedent.size()) throw DiagramError("antecedent does not match the wires in scope");
    for (std::size_t i = 0; i < ante.size(); ++i) {
      auto expected = formula_wires(seq.antecedent[i]);
      if (expected.size() != ante[i].size()) throw DiagramError("wire count mismatch for " + format_formula(seq.antecedent[i]));
      for (std::size_t j = 0; j < expected.size(); ++j)
        if (expected[j] != ante[i][j].type) throw DiagramError("wire type mismatch for " + format_formula(seq.antecedent[i]));
    }
    const RuleData& data = t.data();
    const auto& prem = t.premises();
    auto at = [&](int i) -> const Formula& { return seq.antecedent[static_cast<std::size_t>(i)]; };

    switch (t.rule()) {
      case Rule::Axiom:
        return ante.front();

      case Rule::UnderL:
      case Rule::OverL: {
        const bool under = t.rule() == Rule::UnderL;
        const int g = data.gamma, s = data.sigma;
        const int p = under ? g + s : g;
        const int sig_lo = under ? g : g + 1;
        std::vector<Wires> sigma(ante.begin() + sig_lo, ante.begin() + sig_lo + s);
        Wires arg = run(prem[0], std::move(sigma));
        const Formula& f = at(p);
        const Wires& pw = ante[static_cast<std::size_t>(p)];
        const std::size_t n_arg = formula_wires(f.argument()).size();
        Wires slot = under ? slice(pw, 0, n_arg) : slice(pw, pw.size() - n_arg, pw.size());
        Wires res = under ? slice(pw, n_arg, pw.size()) : slice(pw, 0, pw.size() - n_arg);
        for (std::size_t i = 0; i < n_arg; ++i) cup(arg[i], slot[i]);
        std::vector<Wires> rest(ante.begin(), ante.begin() + g);
        rest.push_back(res);
        const int after = under ? p + 1 : g + 1 + s;
        rest.insert(rest.end(), ante.begin() + after, ante.end());
        return run(prem[1], std::move(rest));
      }

      case Rule::TensorL: {
        const int p = data.principal;
        const Wires& pw = ante[static_cast<std::size_t>(p)];
        const std::size_t nl = formula_wires(at(p).left()).size();
        std::vector<Wires> next(ante.begin(), ante.begin() + p);
        next.push_back(slice(pw, 0, nl));
        next.push_back(slice(pw, nl, pw.size()));
        next.insert(next.end(), ante.begin() + p + 1, ante.end());
        return run(prem[0], std::move(next));
      }

      case Rule::BangL: {
        const int p = data.principal;
        const auto inner = formula_wires(at(p).inner());
        int node = d_.add(Generator::proj(data.copies, inner));
        d_.connect(ante[static_cast<std::size_t>(p)].front().src, {node, 0});
        std::vector<Wires> next(ante.begin(), ante.begin() + p);
        for (int c = 0; c < data.copies; ++c) {
          Wires copy;
          for (std::size_t j = 0; j < inner.size(); ++j)
            copy.push_back({{node, static_cast<int>(c * inner.size() + j)}, inner[j]});
          next.push_back(std::move(copy));
        }
        next.insert(next.end(), ante.begin() + p + 1, ante.end());
        return run(prem[0], std::move(next));
      }

      case Rule::NablaL:
      case Rule::NablaR:
        return run(prem[0], std::move(ante));

      case Rule::Perm: {
        int from = data.from;
        const int to = data.to;
        while (from < to) {
          cross(ante[static_cast<std::size_t>(from)], ante[static_cast<std::size_t>(from + 1)]);
          std::swap(ante[static_cast<std::size_t>(from)], ante[static_cast<std::size_t>(from + 1)]);
          ++from;
        }
        while (from > to) {
          cross(ante[static_cast<std::size_t>(from - 1)], ante[static_cast<std::size_t>(from)]);
          std::swap(ante[static_cast<std::size_t>(from - 1)], ante[static_cast<std::size_t>(from)]);
          --from;
        }
        return run(prem[0], std::move(ante));
      }

      case Rule::UnderR:
      case Rule::OverR: {
        const Formula& goal = seq.succedent;
        Wires hyp, slot;
        for (const auto& w : formula_wires(goal.argument())) {
          int c = d_.add(Generator::cap(w));
          hyp.push_back({{c, 0}, w});
          slot.push_back({{c, 1}, w});
        }
        if (t.rule() == Rule::UnderR) {
          ante.insert(ante.begin(), hyp);
          return concat(slot, run(prem[0], std::move(ante)));
        }
        ante.push_back(hyp);
        return concat(run(prem[0], std::move(ante)), slot);
      }

      case Rule::TensorR: {
        const int g = data.gamma;
        std::vector<Wires> left(ante.begin(), ante.begin() + g), right(ante.begin() + g, ante.end());
        Wires a = run(prem[0], std::move(left));
        return concat(std::move(a), run(prem[1], std::move(right)));
      }

      case Rule::BangR: {
        const Sequent& inner_seq = prem[0].conclusion();
        auto body = std::make_shared<Diagram>();
        body->inputs = formula_wires(inner_seq.antecedent.front());
        Wires hyp;
        for (int i = 0; i < static_cast<int>(body->inputs.size()); ++i)
          hyp.push_back({{Port::kBoundary, i}, body->inputs[static_cast<std::size_t>(i)]});
        Compiler sub(*body);
        Wires outs = sub.run(prem[0], {hyp});
        for (int i = 0; i < static_cast<int>(outs.size()); ++i) {
          body->outputs.push_back(outs[static_cast<std::size_t>(i)].type);
          body->connect(outs[static_cast<std::size_t>(i)].src, {Port::kBoundary, i});
        }
        Generator lift = Generator::fock_lift(body);
        const WireType out_type = lift.outputs.front();
        int node = d_.add(std::move(lift));
        d_.connect(ante.front().front().src, {node, 0});
        return {{{node, 0}, out_type}};
      }

      case Rule::Cut:
        throw DiagramError("proofs with Cut cannot be compiled");
    }
    throw DiagramError("unhandled rule");
  }

  Wires word(const std::string& w, int position, const Formula& f) {
    if (!f.is_bang()) {
      int node = d_.add(Generator::state(w, position, f));
      Wires out;
      const auto& outs = d_.nodes[static_cast<std::size_t>(node)].outputs;
      for (int i = 0; i < static_cast<int>(outs.size()); ++i) out.push_back({{node, i}, outs[static_cast<std::size_t>(i)]});
      return out;
    }
    auto body = std::make_shared<Diagram>();
    Compiler sub(*body);
    Wires inner = sub.word(w, position, f.inner());
    for (int i = 0; i < static_cast<int>(inner.size()); ++i) {
      body->outputs.push_back(inner[static_cast<std::size_t>(i)].type);
      body->connect(inner[static_cast<std::size_t>(i)].src, {Port::kBoundary, i});
    }
    Generator lift = Generator::fock_lift(body);
    const WireType out_type = lift.outputs.front();
    int node = d_.add(std::move(lift));
    return {{{node, 0}, out_type}};
  }

 private:
  void cup(const Wire& a, const Wire& b) {
    if (a.type != b.type) throw DiagramError("cup joins " + a.type.to_string() + " and " + b.type.to_string());
    int c = d_.add(Generator::cup(a.type));
    d_.connect(a.src, {c, 0});
    d_.connect(b.src, {c, 1});
  }

  // Exchanges two adjacent bundles of strings. Crossings with an S string
  // are free (S is the unit), so only crossings of two non-S strings get a
  // Swap node.
  void cross(Wires& left, Wires& right) {
    Wires seq = concat(left, right);
    const std::size_t nl = left.size(), nr = right.size();
    for (std::size_t i = nl; i-- > 0;) {
      for (std::size_t pos = i; pos < i + nr; ++pos) {
        Wire& a = seq[pos];
        Wire& b = seq[pos + 1];
        if (a.type == WireType::s() || b.type == WireType::s()) {
          std::swap(a, b);
          continue;
        }
        int node = d_.add(Generator::swap(a.type, b.type));
        d_.connect(a.src, {node, 0});
        d_.connect(b.src, {node, 1});
        Wire na{{node, 0}, b.type}, nb{{node, 1}, a.type};
        a = na;
        b = nb;
      }
    }
    right = slice(seq, 0, nr);
    left = slice(seq, nr, nr + nl);
  }

  Diagram& d_;
};

}  // namespace

Diagram proof_to_diagram(const ProofTree& proof, const std::vector<std::string>& words, const Lexicon& lex) {
  if (CheckResult r = check_proof(proof, INT_MAX); !r)
    throw DiagramError("not a valid proof (" + to_string(r.failure) + " at " + r.path + "): " + r.message);
  const Sequent& root = proof.conclusion();
  if (words.size() != root.antecedent.size())
    throw DiagramError("proof has " + std::to_string(root.antecedent.size()) + " leaves but " +
                       std::to_string(words.size()) + " words were given");
  Diagram d;
  Compiler c(d);
  std::vector<Wires> ante;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& options = lex.formulas(words[i]);
    if (std::find(options.begin(), options.end(), root.antecedent[i]) == options.end())
      throw DiagramError("word '" + words[i] + "' has no lexical type " + format_formula(root.antecedent[i]));
    ante.push_back(c.word(words[i], static_cast<int>(i), root.antecedent[i]));
  }
  Wires outs = c.run(proof, std::move(ante));
  for (int i = 0; i < static_cast<int>(outs.size()); ++i) {
    d.outputs.push_back(outs[static_cast<std::size_t>(i)].type);
    d.connect(outs[static_cast<std::size_t>(i)].src, {Port::kBoundary, i});
  }
  return d;
}

}  // namespace tlg
