// Copyright 2026 The quorel Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "quorel/cli.hpp"

#include <unistd.h>

#include <iostream>

int
main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto parsed = quorel::parseCommandLine(args, isatty(STDOUT_FILENO) != 0);
    quorel::CliResult result;
    if (auto* cmd = std::get_if<quorel::Command>(&parsed))
    {
        result = quorel::run(*cmd);
    }
    else
    {
        result = std::get<quorel::CliResult>(parsed);
    }
    std::cout << result.out << std::flush;
    std::cerr << result.err << std::flush;
    return result.exit;
}
