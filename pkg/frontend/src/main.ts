import { Api } from "./api";
import { createApp } from "./app";

const SAMPLE = `so much depends
upon

a red wheel
barrow

glazed with rain
water

beside the white
chickens`;

const app = createApp(new Api(""));
document.getElementById("root")!.appendChild(app.element);
void app.loadDocument(SAMPLE);
