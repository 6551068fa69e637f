#include "sensorlife/cli.hpp"

int main(int argc, char** argv) { return sensorlife::cli_main(argc, argv); }
