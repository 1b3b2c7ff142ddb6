#include <cstdio>
int main() { std::puts("qcomb: work in progress"); return 0; }
