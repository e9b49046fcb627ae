import { ApiClient } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "http://localhost:8000";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}

void new App(root, new ApiClient(base)).start();
