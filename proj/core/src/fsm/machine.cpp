#include "colstate/fsm/machine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "colstate/errors.hpp"

namespace colstate::fsm {

int Machine::symbol_index(Symbol s) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == s) return static_cast<int>(i);
    }
    throw InputError(std::string("symbol '") + s + "' not in machine alphabet");
}

const Eigen::MatrixXd& Machine::matrix_for(Symbol s) const {
    return symbol_matrices[static_cast<std::size_t>(symbol_index(s))];
}

Eigen::MatrixXd Machine::one_step_matrix() const {
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(num_states, num_states);
    for (const auto& m : symbol_matrices) total += m;
    return total;
}

bool Machine::is_unifilar() const {
    for (const auto& m : symbol_matrices) {
        for (int i = 0; i < num_states; ++i) {
            int positive = 0;
            for (int j = 0; j < num_states; ++j) {
                if (m(i, j) > 0.0) ++positive;
            }
            if (positive > 1) return false;
        }
    }
    return true;
}

bool Machine::is_strongly_connected() const {
    if (num_states == 0) return false;
    const Eigen::MatrixXd total = one_step_matrix();
    // Forward and backward reachability from state 0 via BFS.
    auto reaches_all = [&](bool transpose) {
        std::vector<char> seen(static_cast<std::size_t>(num_states), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int j = 0; j < num_states; ++j) {
                double w = transpose ? total(j, v) : total(v, j);
                if (w > 0.0 && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == num_states;
    };
    return reaches_all(false) && reaches_all(true);
}

void Machine::validate(double tol) const {
    if (num_states <= 0) throw InputError("machine must have at least one state");
    if (alphabet.empty()) throw InputError("machine alphabet is empty");
    if (symbol_matrices.size() != alphabet.size())
        throw InputError("one transition matrix required per alphabet symbol");
    for (const auto& m : symbol_matrices) {
        if (m.rows() != num_states || m.cols() != num_states)
            throw InputError("transition matrix dimension mismatch");
        if ((m.array() < 0.0).any())
            throw InputError("negative transition probability");
    }
    for (int i = 0; i < num_states; ++i) {
        double row = 0.0;
        for (const auto& m : symbol_matrices) row += m.row(i).sum();
        if (std::abs(row - 1.0) > tol) {
            std::ostringstream os;
            os << "state " << i << " outgoing probabilities sum to " << row;
            throw InputError(os.str());
        }
    }
    if (initial.size() != num_states)
        throw InputError("initial distribution length mismatch");
    if ((initial.array() < 0.0).any())
        throw InputError("negative initial probability");
    if (std::abs(initial.sum() - 1.0) > tol)
        throw InputError("initial distribution does not sum to 1");
}

Machine single_state_machine(double q) {
    Machine m;
    m.num_states = 1;
    m.alphabet = {'C', 'R'};
    m.symbol_matrices = {Eigen::MatrixXd::Constant(1, 1, q),
                         Eigen::MatrixXd::Constant(1, 1, 1.0 - q)};
    m.initial = Eigen::VectorXd::Ones(1);
    return m;
}

namespace {

using nlohmann::json;

Machine machine_from_json(const json& j) {
    Machine m;
    try {
        m.num_states = j.at("states").get<int>();
        if (m.num_states <= 0) throw InputError("\"states\" must be positive");
        for (const auto& s : j.at("alphabet")) {
            const auto str = s.get<std::string>();
            if (str.size() != 1)
                throw InputError("alphabet symbols must be single characters");
            m.alphabet.push_back(str[0]);
        }
        m.symbol_matrices.assign(m.alphabet.size(),
                                 Eigen::MatrixXd::Zero(m.num_states, m.num_states));
        m.initial = Eigen::VectorXd::Zero(m.num_states);
        const auto& init = j.at("initial");
        if (static_cast<int>(init.size()) != m.num_states)
            throw InputError("\"initial\" length must equal \"states\"");
        for (int i = 0; i < m.num_states; ++i) m.initial(i) = init[i].get<double>();
        for (const auto& t : j.at("transitions")) {
            const int from = t.at("from").get<int>();
            const int to = t.at("to").get<int>();
            const auto sym = t.at("symbol").get<std::string>();
            const double prob = t.at("prob").get<double>();
            if (from < 0 || from >= m.num_states || to < 0 || to >= m.num_states)
                throw InputError("transition state index out of range");
            if (sym.size() != 1) throw InputError("transition symbol must be one character");
            m.symbol_matrices[static_cast<std::size_t>(m.symbol_index(sym[0]))](from, to) += prob;
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad machine JSON: ") + e.what());
    }
    m.validate();
    return m;
}

json machine_to_json(const Machine& m) {
    json j;
    j["states"] = m.num_states;
    j["alphabet"] = json::array();
    for (Symbol s : m.alphabet) j["alphabet"].push_back(std::string(1, s));
    j["initial"] = std::vector<double>(m.initial.data(), m.initial.data() + m.initial.size());
    json trans = json::array();
    for (std::size_t s = 0; s < m.alphabet.size(); ++s) {
        for (int i = 0; i < m.num_states; ++i) {
            for (int k = 0; k < m.num_states; ++k) {
                const double p = m.symbol_matrices[s](i, k);
                if (p > 0.0) {
                    trans.push_back({{"from", i},
                                     {"symbol", std::string(1, m.alphabet[s])},
                                     {"to", k},
                                     {"prob", p}});
                }
            }
        }
    }
    j["transitions"] = std::move(trans);
    return j;
}

}  // namespace

Machine machine_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad machine JSON: ") + e.what());
    }
    return machine_from_json(j);
}

std::string machine_to_json_text(const Machine& m) {
    return machine_to_json(m).dump(2);
}

Machine load_machine_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open machine file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return machine_from_json_text(buf.str());
}

void save_machine_json(const Machine& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write machine file: " + path);
    out << machine_to_json_text(m) << "\n";
}

}  // namespace colstate::fsm
