#include <pybind11/pybind11.h>
PYBIND11_MODULE(_stakenet, m) { m.doc() = "stub"; }
