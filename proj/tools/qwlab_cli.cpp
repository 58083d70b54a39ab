#include <cstdio>
int main() { std::puts("qwlab"); return 0; }
