import { ApiClient } from "./api";
import { Controller } from "./controller";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
const controller = new Controller(new ApiClient(""), root);
controller.attach();
void controller.start();
