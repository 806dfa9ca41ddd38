#include "lsp/cli.hpp"

int main(int argc, char** argv) {
    return lsp::dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
