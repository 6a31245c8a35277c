// Copyright 2026 The ftre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Estimates a small QASM circuit on two presets and prints where the time goes.
//
//   estimate_sample [circuit.qasm]

#include <iostream>

#include "ftre/ftre.hpp"

int main(int argc, char **argv) {
    using namespace ftre;
    try {
        Circuit c = argc > 1 ? load_circuit(argv[1])
                             : parse_qasm("qreg q[2]; h q[0]; cx q[0], q[1]; rz(0.01) q[1]; t q[0];");
        for (const char *name : {"SSM@current", "DSM-fold@proposed"}) {
            PipelineResult res = run_pipeline(c, preset_from_name(name));
            const ResourceReport &r = res.report;
            std::cout << name << ": d = " << r.d << ", " << r.physical_qubits << " physical qubits, critical path "
                      << round_us(to_us(r.critical_path)) << " us, cultivation share " << r.cultivation_fraction()
                      << "\n";
            std::cout << breakdown_primitive_csv(r);
        }
    } catch (const Error &e) {
        std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return 0;
}
